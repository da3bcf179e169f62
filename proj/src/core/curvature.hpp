#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "core/tolerances.hpp"

namespace nqobc {

using Complex = std::complex<double>;

class FrameMatrix;  // unitary.hpp

// Thrown when components fail the curvature symmetry checks.
struct TensorSymmetryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Pointwise Kahler algebraic curvature tensor at a point: the dense complex
// array R[i,j,k,l] meaning R_{i jbar k lbar} in a fixed unitary reference
// frame, zero-based, row-major in (i,j,k,l).
//
// A valid tensor satisfies
//   R[i,j,k,l] == R[k,j,i,l]            (pair symmetry 1)
//   R[i,j,k,l] == R[i,l,k,j]            (pair symmetry 2)
//   conj(R[i,j,k,l]) == R[j,i,l,k]      (Hermitian reality)
// Construction does not enforce these; all factory functions produce valid
// tensors and validate() reports residuals for anything else.
class CurvatureTensor {
 public:
  CurvatureTensor(int n, std::vector<Complex> components);

  int dim() const { return n_; }

  std::size_t index(int i, int j, int k, int l) const {
    return ((static_cast<std::size_t>(i) * n_ + j) * n_ + k) * n_ + l;
  }

  const Complex& at(int i, int j, int k, int l) const {
    return c_[index(i, j, k, l)];
  }

  const std::vector<Complex>& components() const { return c_; }

 private:
  int n_;
  std::vector<Complex> c_;
};

struct SymmetryViolation {
  std::string identity;       // "pair-symmetry-1", "pair-symmetry-2", "hermitian-reality"
  std::array<int, 4> index;   // worst offending (i,j,k,l)
  double residual;
};

// Empty iff all three symmetry identities hold within tol::symmetry.
// At most one entry per identity, carrying the worst residual.
std::vector<SymmetryViolation> validate(const CurvatureTensor& t);

// Model tensors.
CurvatureTensor flat(int n);
CurvatureTensor constant_hsc(int n, double c);
// One-dimensional factor whose single component R[0,0,0,0] equals h. The
// library takes h as the holomorphic sectional curvature of the factor and
// makes no claim about Gaussian-curvature normalizations.
CurvatureTensor surface(double h);
// Block-diagonal tensor of a metric product: components with all indices in
// one factor equal that factor's components, everything mixing factors is 0.
CurvatureTensor product(const CurvatureTensor& a, const CurvatureTensor& b);
// Deterministic in seed; surjective onto the full symmetry space
// (real dimension n^2 (n+1)^2 / 4); components are O(scale).
CurvatureTensor random_kahler(int n, std::uint64_t seed, double scale);

// Components in the frame whose matrix is `frame` (column a = coefficients
// of the new a-th frame vector in the reference frame):
//   R'[a,b,c,d] = sum_{p,q,r,s} R[p,q,r,s] u(p,a) conj(u(q,b)) u(r,c) conj(u(s,d))
CurvatureTensor transform(const CurvatureTensor& t, const FrameMatrix& frame);

// A(i,j) = R(v_i, conj v_i, v_j, conj v_j) with v_a = column a of the frame.
// Real symmetric; diagonal = holomorphic sectional curvatures. O(n^5).
Eigen::MatrixXd bisectional_matrix(const CurvatureTensor& t,
                                   const FrameMatrix& frame);

// General contraction sum R[p,q,r,s] x_p conj(y_q) z_r conj(w_s).
Complex contract(const CurvatureTensor& t, const Eigen::VectorXcd& x,
                 const Eigen::VectorXcd& y, const Eigen::VectorXcd& z,
                 const Eigen::VectorXcd& w);

// S = sum_{i,j} R[i,i,j,j]; frame invariant.
double scalar_curvature(const CurvatureTensor& t);

// Ric(i,j) = sum_k R[i,j,k,k]; Hermitian, trace = scalar curvature.
Eigen::MatrixXcd ricci(const CurvatureTensor& t);

// R(V, conj V, V, conj V) for unit V.
double holomorphic_sectional(const CurvatureTensor& t,
                             const Eigen::VectorXcd& v);

// R(V, conj V, W, conj W) for a unitary pair V perp W.
double orthogonal_bisectional(const CurvatureTensor& t,
                              const Eigen::VectorXcd& v,
                              const Eigen::VectorXcd& w);

double max_abs_component(const CurvatureTensor& t);

}  // namespace nqobc
