#include "core/unitary.hpp"

#include <cmath>

namespace nqobc {

double unitarity_residual(const Eigen::MatrixXcd& m) {
  const auto n = m.cols();
  return (m.adjoint() * m - Eigen::MatrixXcd::Identity(n, n))
      .cwiseAbs()
      .maxCoeff();
}

FrameMatrix::FrameMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < 1)
    throw std::invalid_argument("frame matrix must be square and nonempty");
  const double r = unitarity_residual(m_);
  if (r > tol::unitarity)
    throw std::invalid_argument("matrix is not unitary (residual " +
                                std::to_string(r) + ")");
}

FrameMatrix FrameMatrix::identity(int n) {
  return FrameMatrix(Eigen::MatrixXcd::Identity(n, n));
}

FrameMatrix haar_sample(int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("dimension must be >= 1");
  Eigen::MatrixXcd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.next_complex_normal();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::VectorXcd d = qr.matrixQR().diagonal();
  // Fold the R-diagonal phases back in; otherwise QR over-represents
  // matrices with positive-real diagonal and the distribution is not Haar.
  for (int j = 0; j < n; ++j) {
    const double a = std::abs(d(j));
    const Complex phase = a > 0.0 ? d(j) / a : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  return FrameMatrix(std::move(q));
}

namespace {

void check_pair(int i, int j, int n) {
  if (n < 2) throw std::invalid_argument("dimension must be >= 2");
  if (i < 0 || j < 0 || i >= n || j >= n)
    throw std::invalid_argument("index out of range");
  if (i == j) throw std::invalid_argument("indices must differ");
}

}  // namespace

FrameMatrix elementary_u0(int i, int j, int n) {
  check_pair(i, j, n);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n);
  const Complex a(0.5, 0.5), b(0.5, -0.5);
  m(i, i) = a;
  m(j, j) = a;
  m(i, j) = b;
  m(j, i) = b;
  return FrameMatrix(std::move(m));
}

FrameMatrix elementary_v0(int i, int j, int n) {
  check_pair(i, j, n);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n);
  const double r = 1.0 / std::sqrt(2.0);
  m(i, i) = r;
  m(j, i) = r;
  m(i, j) = r;
  m(j, j) = -r;
  return FrameMatrix(std::move(m));
}

FrameMatrix elementary_w0(int i, int j, int n) {
  check_pair(i, j, n);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n);
  m(i, i) = 0.0;
  m(j, j) = 0.0;
  m(i, j) = 1.0;
  m(j, i) = 1.0;
  return FrameMatrix(std::move(m));
}

FrameMatrix frame_act(const FrameMatrix& u, const FrameMatrix& e) {
  if (u.dim() != e.dim())
    throw std::invalid_argument("frame dimensions do not match");
  return FrameMatrix(u.matrix() * e.matrix());
}

FrameMatrix retract(const FrameMatrix& u, const Eigen::MatrixXcd& skew,
                    double t) {
  const int n = u.dim();
  if (skew.rows() != n || skew.cols() != n)
    throw std::invalid_argument("tangent dimension does not match frame");
  if ((skew + skew.adjoint()).cwiseAbs().maxCoeff() > tol::unitarity)
    throw std::invalid_argument("tangent matrix is not skew-Hermitian");
  // i*skew is Hermitian; exp(t*skew) = V diag(exp(-i t lambda)) V^H.
  const Eigen::MatrixXcd h = Complex(0.0, 1.0) * skew;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::VectorXcd phases(n);
  for (int k = 0; k < n; ++k) {
    const double a = -t * es.eigenvalues()(k);
    phases(k) = Complex(std::cos(a), std::sin(a));
  }
  return FrameMatrix(u.matrix() * (es.eigenvectors() * phases.asDiagonal() *
                                   es.eigenvectors().adjoint()));
}

}  // namespace nqobc
