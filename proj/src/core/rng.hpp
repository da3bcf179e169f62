#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace nqobc {

// SplitMix64 stream with deterministic substream derivation.
//
// Every stochastic operation in the library takes either an Rng or a 64-bit
// seed from which substreams are derived by key, so results are bitwise
// reproducible regardless of thread schedule. Normal variates use Box-Muller
// on the raw uniforms; std::normal_distribution is avoided because its output
// is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in (0, 1]; safe under log().
  double next_double_open() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Standard normal. Both Box-Muller values are consumed in order.
  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = next_double_open();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.28318530717958647692 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  std::complex<double> next_complex_normal() {
    const double re = next_normal();
    const double im = next_normal();
    return {re, im};
  }

  // Uniform integer in [0, bound), bound > 0. Multiply-shift; bias is
  // negligible for the tiny bounds used here.
  std::uint32_t next_below(std::uint32_t bound) {
    return static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(next_u64() >> 32) * bound) >> 32);
  }

  // Independent child stream identified by `key`. Pure function of the
  // current state and the key; does not advance this stream.
  Rng substream(std::uint64_t key) const {
    std::uint64_t z = state_ ^ (0x9e3779b97f4a7c15ull * (key + 0x632be59bd9b4e019ull));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return Rng(z ^ (z >> 31));
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace nqobc
