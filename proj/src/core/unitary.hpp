#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

#include "core/rng.hpp"
#include "core/tolerances.hpp"

namespace nqobc {

using Complex = std::complex<double>;

double unitarity_residual(const Eigen::MatrixXcd& m);

// An n x n unitary matrix whose columns are a unitary frame: column a holds
// the coefficients of the a-th frame vector against the reference frame,
// f_a = sum_j u(j,a) e_j. Unitarity is checked at construction.
class FrameMatrix {
 public:
  explicit FrameMatrix(Eigen::MatrixXcd m);
  static FrameMatrix identity(int n);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return m_; }
  Eigen::VectorXcd column(int a) const { return m_.col(a); }

 private:
  Eigen::MatrixXcd m_;
};

// Exact Haar distribution on U(n): QR of a complex Gaussian matrix with the
// R-diagonal phases folded back in.
FrameMatrix haar_sample(int n, Rng& rng);

// Elementary frame mixings, zero-based indices, i != j. Each acts on the
// (i,j) plane and is the identity elsewhere.
//
//   u0: new_i = (1+i)/2 f_i + (1-i)/2 f_j,  new_j = (1-i)/2 f_i + (1+i)/2 f_j
//   v0: new_i = (f_i + f_j)/sqrt2,          new_j = (f_i - f_j)/sqrt2
//   w0: swaps f_i and f_j
FrameMatrix elementary_u0(int i, int j, int n);
FrameMatrix elementary_v0(int i, int j, int n);
FrameMatrix elementary_w0(int i, int j, int n);

// Frame obtained by applying the elementary mixing e to the frame u. With
// the column convention above this is the matrix product u * e: column i of
// frame_act(u, v0(i,j,n)) is (col_i(u) + col_j(u))/sqrt2.
FrameMatrix frame_act(const FrameMatrix& u, const FrameMatrix& e);

// u * exp(t x) for skew-Hermitian x, computed through the eigendecomposition
// of the Hermitian matrix i*x, so the result is unitary to machine precision.
FrameMatrix retract(const FrameMatrix& u, const Eigen::MatrixXcd& skew,
                    double t);

}  // namespace nqobc
