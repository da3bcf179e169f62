#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/certify.hpp"
#include "core/curvature.hpp"
#include "core/rng.hpp"

namespace nqobc {

struct SuiteCase {
  std::string id;
  std::string input;
  std::string expected;
  std::string observed;
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<SuiteCase> cases;
  // Fraction of witness-search cases that found a sound violation; 1.0 for
  // suites without a search family.
  double success_rate = 1.0;
  bool passed = false;
  double elapsed_ms = 0.0;  // not serialized; reports are bitwise reproducible
};

// Rejection sampler: random tensors whose scalar curvature is below
// -0.1 * max|component|. Every such tensor admits a violating frame.
CurvatureTensor random_negative_scalar(int n, Rng& rng, double scale = 1.0);

// Scalar-curvature sign suite. Family A: 200 negative-scalar random tensors
// at n in {2,3,4}, the certifier must find a sound witness (pass criterion:
// success rate >= 0.99). Family B: model tensors with NQOBC have nonnegative
// scalar curvature. Family C: the equality case surface(-1) x surface(1) has
// vanishing off-diagonal bisectional entries and H(f1)+H(f2)=0 in every
// frame, sampled over 10^4 Haar frames.
SuiteReport suite_theorem31(std::uint64_t seed, int threads = 0);

// n=3 flatness suite: surface(-1) x surface(1) x flat(1) has zero scalar
// curvature but is not flat, so a violation must exist and the analytically
// derived witness evaluates to -1/2.
SuiteReport suite_flatness_n3(std::uint64_t seed, int threads = 0);

// One-dimensional-factor inequality suite over a grid of products
// surface(h) x T2: certification and lemma43_check must never contradict.
SuiteReport suite_lemma43(std::uint64_t seed, int threads = 0);

struct ConeCheck {
  bool nonnegative = false;
  // Smallest t in (0,1) at which prod(1 - t + t*a_i) vanishes; absent when
  // all eigenvalues are nonnegative.
  std::optional<double> first_vanishing_t;
};

// Eigenvalue-product positivity: a list with a negative entry a_k forces the
// product prod_i (1 - t + t*a_i) to vanish at t = 1/(1 - a_k) in (0,1).
ConeCheck cone_eigencheck(const std::vector<double>& eigenvalues);
double cone_product(const std::vector<double>& eigenvalues, double t);

}  // namespace nqobc
