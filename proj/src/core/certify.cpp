#include "core/certify.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <vector>

#include "core/parallel.hpp"

namespace nqobc {

namespace {

void require_nqobc_dim(const CurvatureTensor& t) {
  if (t.dim() < 2)
    throw std::invalid_argument("NQOBC operations require dimension >= 2");
}

}  // namespace

double qobc_form(const CurvatureTensor& t, const FrameMatrix& frame,
                 const Eigen::VectorXd& xi) {
  require_nqobc_dim(t);
  const int n = t.dim();
  if (xi.size() != n)
    throw std::invalid_argument("xi dimension does not match tensor");
  const Eigen::MatrixXd a = bisectional_matrix(t, frame);
  double acc = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double d = xi(i) - xi(j);
      acc += a(i, j) * d * d;
    }
  return acc;
}

Eigen::MatrixXd curvature_laplacian(const CurvatureTensor& t,
                                    const FrameMatrix& frame) {
  require_nqobc_dim(t);
  const Eigen::MatrixXd a = bisectional_matrix(t, frame);
  const Eigen::VectorXd r = a.rowwise().sum();
  Eigen::MatrixXd l = -a;
  l.diagonal() += r;
  return l;
}

namespace {

// Columns form an orthonormal basis of the subspace orthogonal to (1,...,1):
// the non-leading columns of the Householder reflection that swaps e_0 with
// the normalized all-ones vector.
Eigen::MatrixXd ones_complement_basis(int n) {
  Eigen::VectorXd u = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
  Eigen::VectorXd w = u - Eigen::VectorXd::Unit(n, 0);
  w.normalize();
  const Eigen::MatrixXd h =
      Eigen::MatrixXd::Identity(n, n) - 2.0 * w * w.transpose();
  return h.rightCols(n - 1);
}

FrameMin frame_min_of_laplacian(const Eigen::MatrixXd& l,
                                const Eigen::MatrixXd& basis) {
  const int m = static_cast<int>(basis.cols());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(basis.transpose() * l *
                                                    basis);
  FrameMin out;
  out.lambda = es.eigenvalues()(0);
  out.gap = m >= 2 ? es.eigenvalues()(1) - es.eigenvalues()(0)
                   : std::numeric_limits<double>::infinity();
  out.xi = basis * es.eigenvectors().col(0);
  return out;
}

}  // namespace

FrameMin frame_min(const CurvatureTensor& t, const FrameMatrix& frame) {
  require_nqobc_dim(t);
  return frame_min_of_laplacian(curvature_laplacian(t, frame),
                                ones_complement_basis(t.dim()));
}

namespace {

// Right-multiplies u by the elementary rotation exp(theta*K) on the (a,b)
// plane, K = E_ab - E_ba (plane==false) or i(E_ab + E_ba) (plane==true).
// Only columns a and b change.
Eigen::MatrixXcd rotated(const Eigen::MatrixXcd& u, int a, int b, double theta,
                         bool imag_pair) {
  Eigen::MatrixXcd m = u;
  const double c = std::cos(theta), s = std::sin(theta);
  if (!imag_pair) {
    m.col(a) = c * u.col(a) - s * u.col(b);
    m.col(b) = s * u.col(a) + c * u.col(b);
  } else {
    const Complex is(0.0, s);
    m.col(a) = c * u.col(a) + is * u.col(b);
    m.col(b) = is * u.col(a) + c * u.col(b);
  }
  return m;
}

struct RestartOutcome {
  double lambda = 0.0;
  Eigen::MatrixXcd frame;
  Eigen::VectorXd xi;
};

class DescentContext {
 public:
  DescentContext(const CurvatureTensor& t, const CertifyConfig& cfg)
      : t_(t), cfg_(cfg), basis_(ones_complement_basis(t.dim())) {
    const int n = t.dim();
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) pairs_.emplace_back(a, b);
  }

  FrameMin eval(const Eigen::MatrixXcd& u) const {
    return frame_min_of_laplacian(curvature_laplacian(t_, FrameMatrix(u)),
                                  basis_);
  }

  RestartOutcome run(int restart_index) const {
    const int n = t_.dim();
    Rng rng = Rng(cfg_.seed).substream(restart_index);
    Eigen::MatrixXcd u;
    if (restart_index == 0) {
      u = Eigen::MatrixXcd::Identity(n, n);
    } else {
      Rng sampler = rng.substream(0);
      u = haar_sample(n, sampler).matrix();
    }
    FrameMin cur = eval(u);
    RestartOutcome best{cur.lambda, u, cur.xi};
    // Once well below the violation threshold there is nothing left to prove.
    const double early_stop =
        std::min(-10.0 * cfg_.violation_tolerance, -1e-4);
    const double fd_h = 1e-5;
    double step = 0.5;
    Rng probe_rng = rng.substream(1);

    for (int iter = 0; iter < cfg_.max_iters; ++iter) {
      if (best.lambda < early_stop) break;
      bool moved = false;
      if (cur.gap >= tol::eigen_gap) {
        // Finite-difference gradient over the off-diagonal skew basis.
        // Diagonal (phase) directions leave the bisectional matrix fixed.
        Eigen::VectorXd grad(2 * static_cast<int>(pairs_.size()));
        int g = 0;
        for (const auto& [a, b] : pairs_)
          for (int type = 0; type < 2; ++type) {
            const double fp = eval(rotated(u, a, b, fd_h, type == 1)).lambda;
            const double fm = eval(rotated(u, a, b, -fd_h, type == 1)).lambda;
            grad(g++) = (fp - fm) / (2.0 * fd_h);
          }
        const double gnorm = grad.norm();
        if (gnorm < 1e-10) break;
        const Eigen::MatrixXcd dir = assemble_direction(-grad / gnorm);
        double tt = step;
        for (int bt = 0; bt < 24; ++bt) {
          const Eigen::MatrixXcd cand =
              retract(FrameMatrix(u), dir, tt).matrix();
          const FrameMin next = eval(cand);
          if (next.lambda <= cur.lambda - 1e-4 * tt * gnorm) {
            u = cand;
            cur = next;
            step = std::min(1.0, 2.0 * tt);
            moved = true;
            break;
          }
          tt *= 0.5;
        }
      } else {
        // Eigenvalue crossing: the subgradient is ambiguous, probe random
        // tangent directions instead.
        for (int attempt = 0; attempt < 4 && !moved; ++attempt) {
          const Eigen::MatrixXcd dir = random_direction(probe_rng);
          double tt = step;
          for (int bt = 0; bt < 12; ++bt) {
            const Eigen::MatrixXcd cand =
                retract(FrameMatrix(u), dir, tt).matrix();
            const FrameMin next = eval(cand);
            if (next.lambda < cur.lambda - 1e-14) {
              u = cand;
              cur = next;
              step = std::min(1.0, 2.0 * tt);
              moved = true;
              break;
            }
            tt *= 0.5;
          }
        }
      }
      if (!moved) break;
      if (cur.lambda < best.lambda) best = {cur.lambda, u, cur.xi};
    }
    return best;
  }

 private:
  Eigen::MatrixXcd assemble_direction(const Eigen::VectorXd& coeff) const {
    const int n = t_.dim();
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(n, n);
    int g = 0;
    for (const auto& [a, b] : pairs_) {
      const double c1 = coeff(g++);
      const double c2 = coeff(g++);
      x(a, b) = Complex(c1, c2);
      x(b, a) = Complex(-c1, c2);
    }
    return x;
  }

  Eigen::MatrixXcd random_direction(Rng& rng) const {
    const int n = t_.dim();
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        const double c1 = rng.next_normal();
        const double c2 = rng.next_normal();
        x(a, b) = Complex(c1, c2);
        x(b, a) = Complex(-c1, c2);
      }
    const double norm = x.norm();
    if (norm > 0.0) x /= norm;
    return x;
  }

  const CurvatureTensor& t_;
  const CertifyConfig& cfg_;
  Eigen::MatrixXd basis_;
  std::vector<std::pair<int, int>> pairs_;
};

}  // namespace

Certificate certify_nqobc(const CurvatureTensor& t,
                          const CertifyConfig& config) {
  require_nqobc_dim(t);
  if (config.restarts < 1)
    throw std::invalid_argument("restarts must be positive");
  if (config.max_iters < 0)
    throw std::invalid_argument("max_iters must be nonnegative");
  const auto t0 = std::chrono::steady_clock::now();

  const int threads = resolve_threads(config.threads);
  DescentContext ctx(t, config);
  std::vector<RestartOutcome> results(config.restarts);
  int violator = -1;
  int completed = 0;
  for (int begin = 0; begin < config.restarts && violator < 0;
       begin += threads) {
    const int end = std::min(begin + threads, config.restarts);
    parallel_for_index(end - begin, threads, [&](int k) {
      results[begin + k] = ctx.run(begin + k);
    });
    completed = end;
    for (int k = begin; k < end; ++k)
      if (results[k].lambda < -config.violation_tolerance) {
        violator = k;
        break;
      }
  }

  // Reduce over restarts 0..v (or all of them); this window depends only on
  // the restart index order, never on the chunking.
  const int upto = violator >= 0 ? violator : completed - 1;
  Certificate cert;
  cert.config = config;
  cert.seed = config.seed;
  cert.restarts_used = upto + 1;
  cert.min_lambda = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= upto; ++k)
    cert.min_lambda = std::min(cert.min_lambda, results[k].lambda);

  if (violator >= 0) {
    const RestartOutcome& r = results[violator];
    Witness w;
    w.frame = r.frame;
    w.xi = r.xi;
    w.value = qobc_form(t, FrameMatrix(r.frame), r.xi);
    if (!(w.value < -config.violation_tolerance))
      throw std::logic_error(
          "witness failed direct re-evaluation; eigenvalue path inconsistent");
    cert.status = CertifyStatus::kViolationFound;
    cert.witness = std::move(w);
  } else {
    cert.status = CertifyStatus::kNoViolationFound;
  }
  cert.elapsed_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  return cert;
}

Lemma43Result lemma43_check(const CurvatureTensor& t) {
  const int n = t.dim();
  if (n < 2)
    throw std::invalid_argument("a product with a 1-dimensional first factor "
                                "has dimension >= 2");
  const double floor = tol::symmetry * std::max(1.0, max_abs_component(t));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const bool any_zero = i == 0 || j == 0 || k == 0 || l == 0;
          const bool all_zero = i == 0 && j == 0 && k == 0 && l == 0;
          if (any_zero && !all_zero && std::abs(t.at(i, j, k, l)) > floor)
            throw std::invalid_argument(
                "first factor is not 1-dimensional: components mixing index 0 "
                "with the rest do not vanish");
        }
  Lemma43Result out;
  out.lhs = 0.0;
  for (int j = 1; j < n; ++j) out.lhs += t.at(1, 1, j, j).real();
  out.rhs = -t.at(0, 0, 0, 0).real();
  out.holds = out.lhs >= out.rhs - 1e-10;
  return out;
}

}  // namespace nqobc
