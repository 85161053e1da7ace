#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace liesplit {

// mt19937_64 is fully specified by the standard; the distributions are not.
// This wrapper derives uniform and normal variates from the raw bit stream
// so that seeded runs produce identical bytes on every platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Box-Muller; one fresh pair per call, the spare is deliberately dropped
  // to keep the consumption pattern independent of call history.
  double normal() {
    double u1 = uniform01();
    double u2 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    constexpr double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

  std::uint64_t bits() { return engine_(); }

private:
  std::mt19937_64 engine_;
};

}  // namespace liesplit
