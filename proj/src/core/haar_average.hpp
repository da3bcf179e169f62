#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "core/curvature.hpp"
#include "core/unitary.hpp"

namespace nqobc {

struct HaarEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(samples)
  std::uint64_t samples = 0;
};

struct IdentityCheck {
  std::string label;
  double mean = 0.0;
  double std_error = 0.0;
  double z = 0.0;
  bool pass = false;
};

struct HaarReport {
  std::string identity;
  int n = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double k_hat = 0.0;        // pooled estimate of K = 2*E[F(ij)] = E[G(k)]
  double k_std_error = 0.0;
  std::vector<IdentityCheck> estimates;  // informational per-quantity means
  std::vector<IdentityCheck> checks;     // pass/fail comparisons
  bool passed = false;
};

// Monte Carlo mean of the bisectional-matrix entry (i,j) (resp. (k,k)) over
// Haar frames. Identical seeds share the frame stream across calls, so
// estimates from different estimands are positively correlated and their
// differences have reduced variance. Deterministic in (seed, samples),
// independent of the thread count. samples >= 100.
HaarEstimate estimate_f(const CurvatureTensor& t, int i, int j,
                        std::uint64_t samples, std::uint64_t seed,
                        int threads = 0);
HaarEstimate estimate_g(const CurvatureTensor& t, int k, std::uint64_t samples,
                        std::uint64_t seed, int threads = 0);

// Frame-average identity 2*E[F(ij)] = E[G(k)] for every pair (i,j) and
// every k, all estimated on common frames; every pairwise comparison is a
// check at 5 standard errors. Also pools K from both routes.
HaarReport verify_claim(const CurvatureTensor& t, std::uint64_t samples,
                        std::uint64_t seed, int threads = 0);

// Scalar-curvature average: S = n(n+1)/2 * K within 5 pooled standard
// errors (exact for frame-invariant model tensors).
HaarReport verify_scalar_identity(const CurvatureTensor& t,
                                  std::uint64_t samples, std::uint64_t seed,
                                  int threads = 0);

// Exact pointwise rotation identity
//   F(ij)(U) + F(ij)(U*u0) = 1/2 (G(i)(U*v0) + G(j)(U*v0));
// returns the absolute residual, which is rounding-level for every tensor
// with the curvature symmetries.
double verify_uv_identity(const CurvatureTensor& t, const FrameMatrix& frame,
                          int i, int j);

// sum over i != j of the total weight plus twice the diagonal weight of a
// real weight matrix; the weighted identity compares against K/2 times this.
double weight_total(const Eigen::MatrixXd& weights);

// Weighted frame average: E[sum_{i!=j} F(ij) a_ij + sum_i G(i) a_ii]
// equals K/2 * (sum_{i!=j} a_ij + 2 sum_i a_ii), checked at 5 standard
// errors of the per-sample difference.
HaarReport verify_weighted_identity(const CurvatureTensor& t,
                                    const Eigen::MatrixXd& weights,
                                    std::uint64_t samples, std::uint64_t seed,
                                    int threads = 0);

// Everything the `haar` CLI command runs on one tensor: the claim, the
// scalar identity, three seeded random weight matrices, and a batch of
// exact pointwise rotation-identity spot checks.
struct HaarBundle {
  int n = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  bool passed = false;
  std::vector<HaarReport> reports;
};

HaarBundle haar_verify_bundle(const CurvatureTensor& t, std::uint64_t samples,
                              std::uint64_t seed, int threads = 0);

}  // namespace nqobc
