#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "core/rng.hpp"
#include "core/unitary.hpp"

using namespace nqobc;

TEST_CASE("haar samples are unitary and stream-distinct") {
  Rng rng(11);
  for (int rep = 0; rep < 50; ++rep) {
    const FrameMatrix u = haar_sample(3, rng);
    CHECK(unitarity_residual(u.matrix()) < 1e-12);
  }
  Rng rng2(11);
  const FrameMatrix a = haar_sample(3, rng2);
  const FrameMatrix b = haar_sample(3, rng2);
  CHECK((a.matrix() - b.matrix()).cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("haar first-moment: E|u00|^2 = 1/n") {
  const int n = 3;
  const int samples = 100000;
  Rng rng(2024);
  double sum = 0.0, sumsq = 0.0;
  for (int it = 0; it < samples; ++it) {
    const FrameMatrix u = haar_sample(n, rng);
    const double x = std::norm(u.matrix()(0, 0));
    sum += x;
    sumsq += x * x;
  }
  const double mean = sum / samples;
  const double var = std::max(0.0, sumsq / samples - mean * mean);
  const double se = std::sqrt(var / samples);
  CHECK(std::abs(mean - 1.0 / n) < 5.0 * se);
}

TEST_CASE("haar left invariance of |entry| statistics") {
  const int n = 3;
  const int samples = 100000;
  Rng rng(55);
  const FrameMatrix v = haar_sample(n, rng);
  double s1 = 0, q1 = 0, s2 = 0, q2 = 0;
  for (int it = 0; it < samples; ++it) {
    const FrameMatrix u = haar_sample(n, rng);
    const double x = std::abs(u.matrix()(0, 0));
    const double y = std::abs((v.matrix() * u.matrix())(0, 0));
    s1 += x;
    q1 += x * x;
    s2 += y;
    q2 += y * y;
  }
  const double m1 = s1 / samples, m2 = s2 / samples;
  const double se = std::sqrt((q1 / samples - m1 * m1) / samples +
                              (q2 / samples - m2 * m2) / samples);
  CHECK(std::abs(m1 - m2) < 5.0 * se);
}

TEST_CASE("elementary matrices match their defining blocks") {
  const FrameMatrix u = elementary_u0(0, 1, 2);
  const Complex a(0.5, 0.5), b(0.5, -0.5);
  CHECK(u.matrix()(0, 0) == a);
  CHECK(u.matrix()(0, 1) == b);
  CHECK(u.matrix()(1, 0) == b);
  CHECK(u.matrix()(1, 1) == a);
  CHECK(unitarity_residual(u.matrix()) < 1e-15);

  const FrameMatrix v = elementary_v0(0, 1, 2);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(v.matrix()(0, 0).real() == doctest::Approx(r));
  CHECK(v.matrix()(1, 1).real() == doctest::Approx(-r));
  CHECK(unitarity_residual(v.matrix()) < 1e-14);
  // real symmetric involution
  CHECK((v.matrix() * v.matrix() - Eigen::MatrixXcd::Identity(2, 2))
            .cwiseAbs()
            .maxCoeff() < 1e-14);

  const FrameMatrix w = elementary_w0(0, 2, 4);
  CHECK((w.matrix() * w.matrix() - Eigen::MatrixXcd::Identity(4, 4))
            .cwiseAbs()
            .maxCoeff() == 0.0);
  CHECK(unitarity_residual(w.matrix()) == 0.0);

  CHECK_THROWS_AS(elementary_u0(1, 1, 3), std::invalid_argument);
  CHECK_THROWS_AS(elementary_v0(0, 3, 3), std::invalid_argument);
}

TEST_CASE("frame_act composes columns as the definitions state") {
  Rng rng(7);
  const int n = 4;
  const FrameMatrix u = haar_sample(n, rng);

  const FrameMatrix swapped = frame_act(u, elementary_w0(0, 1, n));
  CHECK((swapped.column(0) - u.column(1)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((swapped.column(1) - u.column(0)).cwiseAbs().maxCoeff() == 0.0);

  const FrameMatrix mixed = frame_act(u, elementary_u0(1, 3, n));
  const Eigen::VectorXcd expect =
      Complex(0.5, 0.5) * u.column(1) + Complex(0.5, -0.5) * u.column(3);
  CHECK((mixed.column(1) - expect).cwiseAbs().maxCoeff() < 1e-12);

  const FrameMatrix same = frame_act(u, FrameMatrix::identity(n));
  CHECK((same.matrix() - u.matrix()).cwiseAbs().maxCoeff() == 0.0);

  const FrameMatrix halved = frame_act(u, elementary_v0(0, 2, n));
  const Eigen::VectorXcd expect2 =
      (u.column(0) + u.column(2)) / std::sqrt(2.0);
  CHECK((halved.column(0) - expect2).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("retract: fixed points, closed-form rotation, unitarity") {
  Rng rng(13);
  const FrameMatrix u = haar_sample(3, rng);
  const Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(3, 3);
  CHECK((retract(u, zero, 1.0).matrix() - u.matrix()).cwiseAbs().maxCoeff() <
        1e-13);

  Eigen::MatrixXcd x(2, 2);
  x << 0, 1, -1, 0;
  const FrameMatrix rot = retract(FrameMatrix::identity(2), x, 3.14159265358979323846);
  CHECK((rot.matrix() + Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() <
        1e-13);

  for (int rep = 0; rep < 20; ++rep) {
    Eigen::MatrixXcd m(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = rng.next_complex_normal();
    const Eigen::MatrixXcd skew = 0.5 * (m - m.adjoint());
    const FrameMatrix out = retract(u, skew, rng.next_double());
    CHECK(unitarity_residual(out.matrix()) < 1e-10);
  }

  Eigen::MatrixXcd notskew(2, 2);
  notskew << 1, 0, 0, 1;
  CHECK_THROWS_AS(retract(u, Eigen::MatrixXcd::Zero(2, 2), 1.0),
                  std::invalid_argument);  // dimension mismatch
  CHECK_THROWS_AS(retract(FrameMatrix::identity(2), notskew, 1.0),
                  std::invalid_argument);
}
