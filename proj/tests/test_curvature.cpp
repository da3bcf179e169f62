#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <complex>

#include "core/curvature.hpp"
#include "core/rng.hpp"
#include "core/unitary.hpp"

using namespace nqobc;

namespace {

Eigen::VectorXcd random_unit(int n, Rng& rng) {
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.next_complex_normal();
  v.normalize();
  return v;
}

double max_component_diff(const CurvatureTensor& a, const CurvatureTensor& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.components().size(); ++i)
    worst = std::max(worst, std::abs(a.components()[i] - b.components()[i]));
  return worst;
}

}  // namespace

TEST_CASE("flat tensors are zero and reject n=0") {
  const CurvatureTensor t = flat(2);
  REQUIRE(t.components().size() == 16);
  for (const auto& z : t.components()) CHECK(z == Complex(0.0, 0.0));
  CHECK(scalar_curvature(flat(3)) == 0.0);
  CHECK_THROWS_AS(flat(0), std::invalid_argument);
}

TEST_CASE("constant_hsc model values") {
  // hsc equals c for any unit vector
  const CurvatureTensor t = constant_hsc(3, 2.0);
  Rng rng(5);
  for (int rep = 0; rep < 10; ++rep)
    CHECK(holomorphic_sectional(t, random_unit(3, rng)) ==
          doctest::Approx(2.0).epsilon(1e-12));

  // scalar = c n(n+1)/2
  for (int n = 1; n <= 5; ++n)
    for (const double c : {-1.0, 0.5, 2.5})
      CHECK(scalar_curvature(constant_hsc(n, c)) ==
            doctest::Approx(c * n * (n + 1) / 2.0).epsilon(1e-13));

  // c = 0 is flat
  CHECK(max_component_diff(constant_hsc(2, 0.0), flat(2)) == 0.0);

  // Ricci = c(n+1)/2 * I
  const Eigen::MatrixXcd r = ricci(constant_hsc(4, 1.5));
  CHECK((r - 1.5 * 2.5 * Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() <
        1e-13);
}

TEST_CASE("scalar curvature is the Ricci trace") {
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 2 + rep % 4;
    const CurvatureTensor t = random_kahler(n, 5000 + rep, 1.0);
    const Eigen::MatrixXcd r = ricci(t);
    CHECK(std::abs(r.trace().real() - scalar_curvature(t)) < 1e-12);
    CHECK(std::abs(r.trace().imag()) < 1e-12);
    CHECK((r - r.adjoint()).cwiseAbs().maxCoeff() < 1e-12);  // Hermitian
  }
}

TEST_CASE("surface and product models") {
  CHECK(scalar_curvature(surface(-1.0)) == -1.0);
  CHECK(max_component_diff(surface(0.0), flat(1)) == 0.0);

  // zero scalar curvature of the hyperbolic-times-sphere product, exactly
  const CurvatureTensor sigma_cp1 = product(surface(-1.0), surface(1.0));
  CHECK(scalar_curvature(sigma_cp1) == 0.0);

  CHECK(max_component_diff(product(flat(1), flat(2)), flat(3)) == 0.0);

  const Eigen::MatrixXd a =
      bisectional_matrix(sigma_cp1, FrameMatrix::identity(2));
  CHECK(a(0, 0) == doctest::Approx(-1.0));
  CHECK(a(1, 1) == doctest::Approx(1.0));
  CHECK(a(0, 1) == doctest::Approx(0.0));
  CHECK(a(1, 0) == doctest::Approx(0.0));

  CHECK(scalar_curvature(product(constant_hsc(2, 0.7), flat(1))) ==
        doctest::Approx(3 * 0.7).epsilon(1e-13));
}

TEST_CASE("bisectional matrix of the constant model") {
  const int n = 4;
  const double c = -0.6;
  const Eigen::MatrixXd a =
      bisectional_matrix(constant_hsc(n, c), FrameMatrix::identity(n));
  const Eigen::MatrixXd expect =
      0.5 * c * (Eigen::MatrixXd::Ones(n, n) + Eigen::MatrixXd::Identity(n, n));
  CHECK((a - expect).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("obc vanishes across product factors") {
  const CurvatureTensor t = product(constant_hsc(2, 1.3), constant_hsc(2, -0.4));
  Rng rng(17);
  for (int rep = 0; rep < 10; ++rep) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
    Eigen::VectorXcd w = Eigen::VectorXcd::Zero(4);
    v.head(2) = random_unit(2, rng);
    w.tail(2) = random_unit(2, rng);
    CHECK(std::abs(orthogonal_bisectional(t, v, w)) < 1e-14);
  }
}

TEST_CASE("random_kahler: validity, determinism, reality, coverage") {
  for (int n = 1; n <= 5; ++n)
    CHECK(validate(random_kahler(n, 42 + n, 1.0)).empty());

  const CurvatureTensor a = random_kahler(3, 42, 1.0);
  const CurvatureTensor b = random_kahler(3, 42, 1.0);
  CHECK(max_component_diff(a, b) == 0.0);  // bitwise

  // Hermitian reality forces R[i,i,j,j] real
  const CurvatureTensor c = random_kahler(2, 7, 1.0);
  CHECK(std::abs(c.at(0, 0, 1, 1).imag()) < 1e-12);

  // The generator spans the full symmetry space: real dimension
  // n^2 (n+1)^2 / 4 (9 for n=2, 36 for n=3).
  for (const auto& [n, dim] : {std::pair{2, 9}, std::pair{3, 36}}) {
    const int m = dim + 24;
    const std::size_t comps = static_cast<std::size_t>(n) * n * n * n;
    Eigen::MatrixXd mat(2 * comps, m);
    for (int col = 0; col < m; ++col) {
      const CurvatureTensor t = random_kahler(n, 900 + col, 1.0);
      for (std::size_t x = 0; x < comps; ++x) {
        mat(2 * x, col) = t.components()[x].real();
        mat(2 * x + 1, col) = t.components()[x].imag();
      }
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(mat);
    qr.setThreshold(1e-8);
    CHECK(qr.rank() == dim);
  }

  CHECK_THROWS_AS(random_kahler(2, 1, 0.0), std::invalid_argument);
}

TEST_CASE("validator pinpoints broken symmetries") {
  CHECK(validate(flat(3)).empty());
  CHECK(validate(constant_hsc(2, 1.0)).empty());

  // An imaginary bump on a self-conjugate component breaks only the
  // Hermitian-reality identity.
  {
    std::vector<Complex> c = flat(2).components();
    c[0] += Complex(0.0, 1e-6);  // R[0,0,0,0]
    const auto v = validate(CurvatureTensor(2, std::move(c)));
    REQUIRE(v.size() == 1);
    CHECK(v[0].identity == "hermitian-reality");
    CHECK(v[0].residual == doctest::Approx(2e-6));
  }
  // A real bump on R[0,0,1,1] breaks both pair symmetries but not reality.
  {
    std::vector<Complex> c = constant_hsc(2, 1.0).components();
    CurvatureTensor probe(2, c);
    c[probe.index(0, 0, 1, 1)] += 1e-6;
    const auto v = validate(CurvatureTensor(2, std::move(c)));
    CHECK(v.size() == 2);
  }
}

TEST_CASE("transform: identity, composition, model invariance") {
  Rng rng(99);
  const CurvatureTensor t = random_kahler(3, 4, 1.0);
  CHECK(max_component_diff(transform(t, FrameMatrix::identity(3)), t) <
        1e-15);

  for (int n = 2; n <= 4; ++n) {
    const CurvatureTensor s = random_kahler(n, 100 + n, 1.0);
    const FrameMatrix u = haar_sample(n, rng);
    const FrameMatrix v = haar_sample(n, rng);
    const CurvatureTensor lhs = transform(transform(s, u), v);
    const CurvatureTensor rhs = transform(s, FrameMatrix(u.matrix() * v.matrix()));
    CHECK(max_component_diff(lhs, rhs) < 1e-10);
    CHECK(validate(lhs).empty());
  }

  const CurvatureTensor m = constant_hsc(3, 1.7);
  const FrameMatrix u = haar_sample(3, rng);
  CHECK(max_component_diff(transform(m, u), m) < 1e-10);

  // non-unitary frames are rejected on construction
  CHECK_THROWS_AS(FrameMatrix(2.0 * Eigen::MatrixXcd::Identity(2, 2)),
                  std::invalid_argument);
}

TEST_CASE("scalar and Ricci spectrum are frame invariant") {
  Rng rng(123);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 2 + rep % 4;
    const CurvatureTensor t = random_kahler(n, 7000 + rep, 1.0);
    const FrameMatrix u = haar_sample(n, rng);
    const CurvatureTensor tu = transform(t, u);
    CHECK(scalar_curvature(tu) ==
          doctest::Approx(scalar_curvature(t)).epsilon(1e-10));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> e1(ricci(t));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> e2(ricci(tu));
    CHECK((e1.eigenvalues() - e2.eigenvalues()).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("bisectional matrix agrees with the full transform") {
  Rng rng(321);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 2 + rep % 3;
    const CurvatureTensor t = random_kahler(n, 8000 + rep, 1.0);
    const FrameMatrix u = haar_sample(n, rng);
    const Eigen::MatrixXd a = bisectional_matrix(t, u);
    CHECK((a - a.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    const CurvatureTensor tu = transform(t, u);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        CHECK(std::abs(a(i, j) - tu.at(i, i, j, j).real()) < 1e-10);
  }
}

TEST_CASE("hsc and obc preconditions") {
  const CurvatureTensor t = constant_hsc(2, 1.0);
  Eigen::VectorXcd big(2);
  big << 2.0, 0.0;
  CHECK_THROWS_AS(holomorphic_sectional(t, big), std::invalid_argument);
  Eigen::VectorXcd e0(2), e0b(2);
  e0 << 1.0, 0.0;
  e0b << 1.0, 0.0;
  CHECK_THROWS_AS(orthogonal_bisectional(t, e0, e0b), std::invalid_argument);
  CHECK(orthogonal_bisectional(flat(2), e0, (Eigen::VectorXcd(2) << 0, 1).finished()) ==
        0.0);
}
