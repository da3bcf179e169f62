#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>

#include "core/curvature.hpp"
#include "core/unitary.hpp"

namespace nqobc {

// Quadratic orthogonal bisectional curvature form
//   sum_{i,j} A(i,j) (xi_i - xi_j)^2,  A = bisectional_matrix(t, frame).
// Nonnegativity of this form over every frame and every real xi is the
// NQOBC condition. Requires n >= 2.
double qobc_form(const CurvatureTensor& t, const FrameMatrix& frame,
                 const Eigen::VectorXd& xi);

// L = Diag(row sums of A) - A. Real symmetric, L * (1,...,1)^T = 0, and
// qobc_form == 2 xi^T L xi, so NQOBC at the frame is L >= 0.
Eigen::MatrixXd curvature_laplacian(const CurvatureTensor& t,
                                    const FrameMatrix& frame);

struct FrameMin {
  double lambda;       // smallest eigenvalue of L on the subspace orth to 1
  Eigen::VectorXd xi;  // corresponding unit eigenvector, orthogonal to 1
  double gap;          // next eigenvalue minus lambda (inf when n == 2)
};

// NQOBC holds at the frame iff lambda >= 0. The trivial kernel direction
// (1,...,1) is projected out so the objective is not pinned at zero.
FrameMin frame_min(const CurvatureTensor& t, const FrameMatrix& frame);

enum class CertifyStatus { kViolationFound, kNoViolationFound };

struct Witness {
  Eigen::MatrixXcd frame;
  Eigen::VectorXd xi;
  double value;  // qobc_form at (frame, xi), evaluated directly at emission
};

struct CertifyConfig {
  int restarts = 100;
  int max_iters = 60;
  double violation_tolerance = tol::violation_default;
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = hardware concurrency
};

struct Certificate {
  CertifyStatus status = CertifyStatus::kNoViolationFound;
  std::optional<Witness> witness;
  int restarts_used = 0;
  double min_lambda = 0.0;  // minimum projected eigenvalue observed
  std::uint64_t seed = 0;
  double elapsed_ms = 0.0;
  CertifyConfig config;
};

// Multistart minimization of frame_min over U(n): restart 0 is the identity
// frame, later restarts are Haar samples refined by Riemannian descent with
// finite-difference gradients and exponential retraction. A frame with
// lambda < -violation_tolerance yields ViolationFound with a directly
// re-evaluated witness. NoViolationFound is heuristic, not a proof.
//
// Deterministic given (seed, config), independent of the thread count:
// restarts are reduced in index order, and on success the certificate covers
// restarts 0..v where v is the lowest violating index.
Certificate certify_nqobc(const CurvatureTensor& t,
                          const CertifyConfig& config = {});

struct Lemma43Result {
  double lhs;   // sum_{j>=1} A(1,j) at the identity frame (0-based)
  double rhs;   // -R[0,0,0,0]
  bool holds;   // lhs >= rhs - 1e-10
};

// One-dimensional-factor inequality at the identity frame. The tensor must
// be a product whose first factor is 1-dimensional (all components mixing
// index 0 with the rest vanish); n >= 2. When the tensor is NQOBC the
// inequality necessarily holds, so a failing check plus a violation-free
// certificate is a contradiction the caller can assert against.
Lemma43Result lemma43_check(const CurvatureTensor& t);

}  // namespace nqobc
