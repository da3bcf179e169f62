#include "core/curvature.hpp"

#include <cmath>

#include "core/rng.hpp"
#include "core/unitary.hpp"

namespace nqobc {

namespace {

std::size_t pow4(int n) {
  const auto m = static_cast<std::size_t>(n);
  return m * m * m * m;
}

void require_dim(int n) {
  if (n < 1) throw std::invalid_argument("dimension must be >= 1");
}

}  // namespace

CurvatureTensor::CurvatureTensor(int n, std::vector<Complex> components)
    : n_(n), c_(std::move(components)) {
  require_dim(n);
  if (c_.size() != pow4(n))
    throw std::invalid_argument("component count must be n^4");
}

std::vector<SymmetryViolation> validate(const CurvatureTensor& t) {
  const int n = t.dim();
  SymmetryViolation worst[3] = {
      {"pair-symmetry-1", {0, 0, 0, 0}, 0.0},
      {"pair-symmetry-2", {0, 0, 0, 0}, 0.0},
      {"hermitian-reality", {0, 0, 0, 0}, 0.0},
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const Complex r = t.at(i, j, k, l);
          const double r1 = std::abs(r - t.at(k, j, i, l));
          const double r2 = std::abs(r - t.at(i, l, k, j));
          const double r3 = std::abs(std::conj(r) - t.at(j, i, l, k));
          const double rs[3] = {r1, r2, r3};
          for (int v = 0; v < 3; ++v)
            if (rs[v] > worst[v].residual) {
              worst[v].residual = rs[v];
              worst[v].index = {i, j, k, l};
            }
        }
  std::vector<SymmetryViolation> out;
  for (const auto& w : worst)
    if (w.residual > tol::symmetry) out.push_back(w);
  return out;
}

CurvatureTensor flat(int n) {
  require_dim(n);
  return CurvatureTensor(n, std::vector<Complex>(pow4(n), Complex(0.0, 0.0)));
}

CurvatureTensor constant_hsc(int n, double c) {
  require_dim(n);
  std::vector<Complex> comps(pow4(n));
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l, ++idx) {
          const double d1 = (i == j && k == l) ? 1.0 : 0.0;
          const double d2 = (i == l && k == j) ? 1.0 : 0.0;
          comps[idx] = Complex(0.5 * c * (d1 + d2), 0.0);
        }
  return CurvatureTensor(n, std::move(comps));
}

CurvatureTensor surface(double h) {
  return CurvatureTensor(1, {Complex(h, 0.0)});
}

CurvatureTensor product(const CurvatureTensor& a, const CurvatureTensor& b) {
  const int n1 = a.dim();
  const int n = n1 + b.dim();
  std::vector<Complex> c(pow4(n), Complex(0.0, 0.0));
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l, ++idx) {
          if (i < n1 && j < n1 && k < n1 && l < n1)
            c[idx] = a.at(i, j, k, l);
          else if (i >= n1 && j >= n1 && k >= n1 && l >= n1)
            c[idx] = b.at(i - n1, j - n1, k - n1, l - n1);
        }
  return CurvatureTensor(n, std::move(c));
}

CurvatureTensor random_kahler(int n, std::uint64_t seed, double scale) {
  require_dim(n);
  if (!(scale > 0.0)) throw std::invalid_argument("scale must be positive");
  Rng rng(seed);
  std::vector<Complex> c(pow4(n));
  for (auto& z : c) z = scale * rng.next_complex_normal();

  auto idx = [n](int i, int j, int k, int l) {
    return ((static_cast<std::size_t>(i) * n + j) * n + k) * n + l;
  };

  // Symmetrize in the order pair-1, pair-2, Hermitian; each pass preserves
  // the previous invariants exactly (IEEE addition is commutative), so the
  // result satisfies all three identities bitwise.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const std::size_t a = idx(i, j, k, l), b = idx(k, j, i, l);
          if (a < b) {
            const Complex m = 0.5 * (c[a] + c[b]);
            c[a] = m;
            c[b] = m;
          }
        }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const std::size_t a = idx(i, j, k, l), b = idx(i, l, k, j);
          if (a < b) {
            const Complex m = 0.5 * (c[a] + c[b]);
            c[a] = m;
            c[b] = m;
          }
        }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const std::size_t a = idx(i, j, k, l), b = idx(j, i, l, k);
          if (a < b) {
            const Complex m = 0.5 * (c[a] + std::conj(c[b]));
            c[a] = m;
            c[b] = std::conj(m);
          } else if (a == b) {
            c[a] = Complex(c[a].real(), 0.0);
          }
        }
  return CurvatureTensor(n, std::move(c));
}

namespace {

// out[..., a at pos, ...] = sum_x in[..., x at pos, ...] * w(x, a)
void contract_stage(int n, int pos, const Eigen::MatrixXcd& w,
                    const std::vector<Complex>& in, std::vector<Complex>& out) {
  std::size_t stride = 1;
  for (int k = pos + 1; k < 4; ++k) stride *= n;
  std::size_t outer = 1;
  for (int k = 0; k < pos; ++k) outer *= n;
  const std::size_t block = n * stride;
  for (std::size_t o = 0; o < outer; ++o)
    for (int a = 0; a < n; ++a)
      for (std::size_t s = 0; s < stride; ++s) {
        const Complex* base = in.data() + o * block + s;
        Complex acc(0.0, 0.0);
        for (int x = 0; x < n; ++x) acc += base[x * stride] * w(x, a);
        out[o * block + a * stride + s] = acc;
      }
}

}  // namespace

CurvatureTensor transform(const CurvatureTensor& t, const FrameMatrix& frame) {
  const int n = t.dim();
  if (frame.dim() != n)
    throw std::invalid_argument("frame dimension does not match tensor");
  const Eigen::MatrixXcd& u = frame.matrix();
  const Eigen::MatrixXcd uc = u.conjugate();
  std::vector<Complex> cur = t.components();
  std::vector<Complex> next(cur.size());
  contract_stage(n, 0, u, cur, next);
  cur.swap(next);
  contract_stage(n, 1, uc, cur, next);
  cur.swap(next);
  contract_stage(n, 2, u, cur, next);
  cur.swap(next);
  contract_stage(n, 3, uc, cur, next);
  cur.swap(next);
  return CurvatureTensor(n, std::move(cur));
}

Eigen::MatrixXd bisectional_matrix(const CurvatureTensor& t,
                                   const FrameMatrix& frame) {
  const int n = t.dim();
  if (frame.dim() != n)
    throw std::invalid_argument("frame dimension does not match tensor");
  const Eigen::MatrixXcd& u = frame.matrix();
  std::vector<Eigen::MatrixXcd> m(n);
  for (int a = 0; a < n; ++a) m[a] = u.col(a) * u.col(a).adjoint();

  Eigen::MatrixXd out(n, n);
  Eigen::MatrixXcd cj(n, n);
  for (int j = 0; j < n; ++j) {
    // cj(p,q) = sum_{r,s} R[p,q,r,s] m[j](r,s)
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        Complex acc(0.0, 0.0);
        for (int r = 0; r < n; ++r)
          for (int s = 0; s < n; ++s) acc += t.at(p, q, r, s) * m[j](r, s);
        cj(p, q) = acc;
      }
    for (int i = 0; i < n; ++i)
      out(i, j) = m[i].cwiseProduct(cj).sum().real();
  }
  return out;
}

Complex contract(const CurvatureTensor& t, const Eigen::VectorXcd& x,
                 const Eigen::VectorXcd& y, const Eigen::VectorXcd& z,
                 const Eigen::VectorXcd& w) {
  const int n = t.dim();
  if (x.size() != n || y.size() != n || z.size() != n || w.size() != n)
    throw std::invalid_argument("vector dimension does not match tensor");
  Complex acc(0.0, 0.0);
  for (int p = 0; p < n; ++p) {
    if (x(p) == Complex(0.0, 0.0)) continue;
    for (int q = 0; q < n; ++q) {
      const Complex xy = x(p) * std::conj(y(q));
      if (xy == Complex(0.0, 0.0)) continue;
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s)
          acc += t.at(p, q, r, s) * xy * z(r) * std::conj(w(s));
    }
  }
  return acc;
}

double scalar_curvature(const CurvatureTensor& t) {
  const int n = t.dim();
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s += t.at(i, i, j, j).real();
  return s;
}

Eigen::MatrixXcd ricci(const CurvatureTensor& t) {
  const int n = t.dim();
  Eigen::MatrixXcd r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Complex acc(0.0, 0.0);
      for (int k = 0; k < n; ++k) acc += t.at(i, j, k, k);
      r(i, j) = acc;
    }
  return r;
}

namespace {

void require_unit(const Eigen::VectorXcd& v, const char* name) {
  if (std::abs(v.norm() - 1.0) > tol::unitarity)
    throw std::invalid_argument(std::string(name) + " must be a unit vector");
}

}  // namespace

double holomorphic_sectional(const CurvatureTensor& t,
                             const Eigen::VectorXcd& v) {
  require_unit(v, "V");
  return contract(t, v, v, v, v).real();
}

double orthogonal_bisectional(const CurvatureTensor& t,
                              const Eigen::VectorXcd& v,
                              const Eigen::VectorXcd& w) {
  require_unit(v, "V");
  require_unit(w, "W");
  if (std::abs(v.dot(w)) > tol::unitarity)
    throw std::invalid_argument("V and W must be orthogonal");
  return contract(t, v, v, w, w).real();
}

double max_abs_component(const CurvatureTensor& t) {
  double m = 0.0;
  for (const auto& z : t.components()) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace nqobc
