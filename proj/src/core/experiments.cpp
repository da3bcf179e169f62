#include "core/experiments.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "core/haar_average.hpp"

namespace nqobc {

namespace {

std::string fmt(double v) {
  if (v == 0.0) v = 0.0;  // collapse -0
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

std::string cert_summary(const Certificate& c) {
  if (c.status == CertifyStatus::kViolationFound)
    return "violation(value=" + fmt(c.witness->value) + ")";
  return "no-violation(min_lambda=" + fmt(c.min_lambda) + ")";
}

}  // namespace

CurvatureTensor random_negative_scalar(int n, Rng& rng, double scale) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const std::uint64_t seed = rng.next_u64();
    CurvatureTensor t = random_kahler(n, seed, scale);
    if (scalar_curvature(t) < -0.1 * max_abs_component(t)) return t;
  }
  throw std::runtime_error("rejection sampling failed to produce a "
                           "negative-scalar tensor");
}

SuiteReport suite_theorem31(std::uint64_t seed, int threads) {
  Stopwatch watch;
  SuiteReport rep;
  rep.suite = "theorem31";
  rep.seed = seed;
  Rng root(seed);

  // Family A: negative scalar curvature forces a violating frame.
  int successes = 0;
  const int total_a = 200;
  for (int idx = 0; idx < total_a; ++idx) {
    const int n = 2 + idx % 3;
    Rng trng = root.substream(1000 + idx);
    const CurvatureTensor t = random_negative_scalar(n, trng);
    CertifyConfig cfg;
    cfg.restarts = 100;
    cfg.seed = root.substream(5000 + idx).next_u64();
    cfg.threads = threads;
    const Certificate cert = certify_nqobc(t, cfg);
    const bool found = cert.status == CertifyStatus::kViolationFound &&
                       cert.witness->value < -1e-8;
    if (found) ++successes;
    SuiteCase c;
    c.id = "A-" + std::to_string(idx);
    c.input = "random-negative-scalar(n=" + std::to_string(n) +
              " scalar=" + fmt(scalar_curvature(t)) + ")";
    c.expected = "violation";
    c.observed = cert_summary(cert);
    c.pass = found;
    rep.cases.push_back(c);
  }
  rep.success_rate = static_cast<double>(successes) / total_a;
  {
    SuiteCase c;
    c.id = "A-success-rate";
    c.input = "200 negative-scalar tensors, n in {2,3,4}, 100 restarts";
    c.expected = ">=0.99";
    c.observed = fmt(rep.success_rate);
    c.pass = rep.success_rate >= 0.99;
    rep.cases.push_back(c);
  }

  // Family B: NQOBC model tensors have nonnegative scalar curvature.
  struct ModelCase {
    const char* name;
    CurvatureTensor tensor;
  };
  const ModelCase models[] = {
      {"constant_hsc(2,1)", constant_hsc(2, 1.0)},
      {"constant_hsc(3,0.5)", constant_hsc(3, 0.5)},
      {"constant_hsc(4,2)", constant_hsc(4, 2.0)},
      {"flat(2)", flat(2)},
      {"flat(3)", flat(3)},
      {"surface(-1)xsurface(1)", product(surface(-1.0), surface(1.0))},
  };
  for (const auto& m : models) {
    const double s = scalar_curvature(m.tensor);
    SuiteCase c;
    c.id = std::string("B-") + m.name;
    c.input = m.name;
    c.expected = "scalar>=-1e-10";
    c.observed = "scalar=" + fmt(s);
    c.pass = s >= -1e-10;
    rep.cases.push_back(c);
  }

  // Family C: equality case in every frame.
  {
    const CurvatureTensor t = product(surface(-1.0), surface(1.0));
    Rng frng = root.substream(9000);
    double worst_off = 0.0, worst_diag = 0.0;
    for (int it = 0; it < 10000; ++it) {
      const FrameMatrix u = haar_sample(2, frng);
      const Eigen::MatrixXd a = bisectional_matrix(t, u);
      worst_off = std::max(worst_off, std::abs(a(0, 1)));
      worst_diag = std::max(worst_diag, std::abs(a(0, 0) + a(1, 1)));
    }
    SuiteCase c1;
    c1.id = "C-offdiagonal";
    c1.input = "surface(-1)xsurface(1), 10^4 Haar frames";
    c1.expected = "max|A01|<1e-10";
    c1.observed = fmt(worst_off);
    c1.pass = worst_off < 1e-10;
    rep.cases.push_back(c1);
    SuiteCase c2;
    c2.id = "C-hsc-sum";
    c2.input = "surface(-1)xsurface(1), 10^4 Haar frames";
    c2.expected = "max|H(f1)+H(f2)|<1e-10";
    c2.observed = fmt(worst_diag);
    c2.pass = worst_diag < 1e-10;
    rep.cases.push_back(c2);
  }

  // Individual family-A cases are informational; the suite verdict uses the
  // success-rate criterion plus families B and C.
  rep.passed = true;
  for (const auto& c : rep.cases) {
    const bool individual_a = c.id.rfind("A-", 0) == 0 && c.id != "A-success-rate";
    if (!individual_a) rep.passed = rep.passed && c.pass;
  }
  rep.elapsed_ms = watch.ms();
  return rep;
}

SuiteReport suite_flatness_n3(std::uint64_t seed, int threads) {
  Stopwatch watch;
  SuiteReport rep;
  rep.suite = "flatness-n3";
  rep.seed = seed;
  Rng root(seed);

  const CurvatureTensor t =
      product(product(surface(-1.0), surface(1.0)), flat(1));

  {
    const double s = scalar_curvature(t);
    SuiteCase c;
    c.id = "scalar-zero";
    c.input = "surface(-1)xsurface(1)xflat(1)";
    c.expected = "0";
    c.observed = fmt(s);
    c.pass = std::abs(s) <= 1e-12;
    rep.cases.push_back(c);
  }
  {
    // f1 = (e1+e3)/sqrt2, f2 = e2, f3 = (e1-e3)/sqrt2, xi = (1,0,0):
    // the only coupling is A(0,2) = -1/4, so the form is -1/2.
    const double r = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXcd m(3, 3);
    m << r, 0, r,
         0, 1, 0,
         r, 0, -r;
    Eigen::VectorXd xi(3);
    xi << 1, 0, 0;
    const double value = qobc_form(t, FrameMatrix(m), xi);
    SuiteCase c;
    c.id = "derived-witness";
    c.input = "frame f1=(e1+e3)/sqrt2 f2=e2 f3=(e1-e3)/sqrt2, xi=(1,0,0)";
    c.expected = "-0.5";
    c.observed = fmt(value);
    c.pass = std::abs(value + 0.5) <= 1e-12;
    rep.cases.push_back(c);
  }
  {
    CertifyConfig cfg;
    cfg.restarts = 50;
    cfg.seed = root.substream(1).next_u64();
    cfg.threads = threads;
    const Certificate cert = certify_nqobc(t, cfg);
    SuiteCase c;
    c.id = "certifier-violation";
    c.input = "surface(-1)xsurface(1)xflat(1), 50 restarts";
    c.expected = "violation(value<=-0.1)";
    c.observed = cert_summary(cert);
    c.pass = cert.status == CertifyStatus::kViolationFound &&
             cert.witness->value <= -0.1;
    rep.cases.push_back(c);
  }
  {
    const CurvatureTensor f = product(product(flat(1), flat(1)), flat(1));
    CertifyConfig cfg;
    cfg.restarts = 50;
    cfg.seed = root.substream(2).next_u64();
    cfg.threads = threads;
    const Certificate cert = certify_nqobc(f, cfg);
    SuiteCase c;
    c.id = "all-flat-control";
    c.input = "flat(1)xflat(1)xflat(1)";
    c.expected = "no-violation";
    c.observed = cert_summary(cert);
    c.pass = cert.status == CertifyStatus::kNoViolationFound;
    rep.cases.push_back(c);
  }

  rep.passed = true;
  for (const auto& c : rep.cases) rep.passed = rep.passed && c.pass;
  rep.elapsed_ms = watch.ms();
  return rep;
}

SuiteReport suite_lemma43(std::uint64_t seed, int threads) {
  Stopwatch watch;
  SuiteReport rep;
  rep.suite = "lemma43";
  rep.seed = seed;
  Rng root(seed);

  struct GridCase {
    std::string name;
    CurvatureTensor tensor;
  };
  std::vector<GridCase> grid;
  const double hs[] = {-2.0, -1.0, 0.0, 1.0};
  for (const double h : hs) {
    const std::string hn = "surface(" + fmt(h) + ")x";
    grid.push_back({hn + "constant_hsc(2,1)",
                    product(surface(h), constant_hsc(2, 1.0))});
    grid.push_back({hn + "constant_hsc(2,2)",
                    product(surface(h), constant_hsc(2, 2.0))});
    grid.push_back({hn + "surface(1)xsurface(1)",
                    product(surface(h), product(surface(1.0), surface(1.0)))});
    grid.push_back({hn + "surface(-1)xsurface(1)",
                    product(surface(h), product(surface(-1.0), surface(1.0)))});
  }
  grid.push_back({"surface(-1)xsurface(1)",
                  product(surface(-1.0), surface(1.0))});
  grid.push_back({"surface(-3)xsurface(1)",
                  product(surface(-3.0), surface(1.0))});
  grid.push_back({"surface(0)xconstant_hsc(2,1)",
                  product(surface(0.0), constant_hsc(2, 1.0))});

  int idx = 0;
  for (const auto& g : grid) {
    const Lemma43Result check = lemma43_check(g.tensor);
    CertifyConfig cfg;
    cfg.restarts = 60;
    cfg.seed = root.substream(100 + idx).next_u64();
    cfg.threads = threads;
    const Certificate cert = certify_nqobc(g.tensor, cfg);
    const bool violation = cert.status == CertifyStatus::kViolationFound;
    // A violation-free certificate with a failing inequality would
    // contradict the one-dimensional-factor bound.
    const bool consistent = violation || check.holds;
    SuiteCase c;
    c.id = "grid-" + std::to_string(idx++);
    c.input = g.name;
    c.expected = "inequality and certificate consistent";
    c.observed = "lhs=" + fmt(check.lhs) + " rhs=" + fmt(check.rhs) +
                 (check.holds ? " holds " : " fails ") + cert_summary(cert);
    c.pass = consistent;
    rep.cases.push_back(c);
  }

  rep.passed = true;
  for (const auto& c : rep.cases) rep.passed = rep.passed && c.pass;
  rep.elapsed_ms = watch.ms();
  return rep;
}

ConeCheck cone_eigencheck(const std::vector<double>& eigenvalues) {
  ConeCheck out;
  out.nonnegative = true;
  double first = std::numeric_limits<double>::infinity();
  for (const double a : eigenvalues) {
    if (!std::isfinite(a))
      throw std::invalid_argument("eigenvalues must be finite");
    if (a < 0.0) {
      out.nonnegative = false;
      first = std::min(first, 1.0 / (1.0 - a));
    }
  }
  if (!out.nonnegative) out.first_vanishing_t = first;
  return out;
}

double cone_product(const std::vector<double>& eigenvalues, double t) {
  double p = 1.0;
  for (const double a : eigenvalues) p *= 1.0 - t + t * a;
  return p;
}

}  // namespace nqobc
