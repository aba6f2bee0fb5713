#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "hyperlap/error.hpp"

namespace hyperlap {

// Seeded RNG with hand-rolled transforms. std::uniform_real_distribution and
// friends are implementation-defined, so outputs built on them would not be
// reproducible across standard libraries; everything downstream of a seed has
// to be byte-stable, hence the fixed mappings below.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // uniform in [0, 1): 53 mantissa bits
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // uniform in [lo, hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // unbiased integer in [0, n) by rejection
  std::uint64_t uniform_index(std::uint64_t n) {
    require(n > 0, ErrorKind::Internal, "uniform_index: n must be positive");
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      std::uint64_t x = engine_();
      if (x >= threshold) return x % n;
    }
  }

  // standard normal via Box-Muller (one value per call; cached pair unused to
  // keep the call sequence easy to reason about)
  double normal() {
    double u1 = uniform01();
    while (u1 == 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hyperlap
