#include "nopa/types.hpp"

#include <cmath>
#include <stdexcept>

namespace nopa {

PhasePoint::PhasePoint(double re, double im) : re_(re), im_(im) {
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw InvalidArgument("phase point amplitude must be finite");
  }
}

SqueezeParam::SqueezeParam(double r) : r_(r) {
  if (!std::isfinite(r) || r < 0.0) {
    throw InvalidArgument("squeezing parameter must be finite and >= 0, got " + std::to_string(r));
  }
}

DisplacementMagnitude::DisplacementMagnitude(double j) : j_(j) {
  if (!std::isfinite(j) || j < 0.0) {
    throw InvalidArgument("displacement magnitude must be finite and >= 0, got " +
                          std::to_string(j));
  }
}

Quadruplet Quadruplet::from_magnitude(DisplacementMagnitude j) {
  const double s = std::sqrt(j.value());
  return {PhasePoint{0.0}, PhasePoint{s}, PhasePoint{0.0}, PhasePoint{-s}};
}

BellResult make_bell_result(double B, const Quadruplet& q, SqueezeParam r, bool converged) {
  if (!(std::abs(B) <= kTsirelsonBound + 1e-9)) {
    throw std::logic_error("CHSH value " + std::to_string(B) + " exceeds the Tsirelson bound");
  }
  return BellResult{B, q, r, std::abs(B) > kLocalBound, converged};
}

}  // namespace nopa
