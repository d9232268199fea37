#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "nopa/types.hpp"

namespace nopa::testing {

/// Seeded source for hand-rolled property tests.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform in the disk of the given radius.
  PhasePoint in_disk(double radius) {
    const double rho = radius * std::sqrt(uniform(0.0, 1.0));
    const double phi = uniform(0.0, 2.0 * std::numbers::pi);
    return {rho * std::cos(phi), rho * std::sin(phi)};
  }

 private:
  std::mt19937_64 engine_;
};

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace nopa::testing
