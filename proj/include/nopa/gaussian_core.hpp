#pragma once

#include "nopa/types.hpp"

namespace nopa {

/// Exponent E of the displaced-parity correlation of the two-mode squeezed
/// vacuum, Pi(alpha; beta) = exp(E).
///
/// E = -2 cosh(2r)(|alpha|^2 + |beta|^2) + 4 sinh(2r) Re(alpha beta), evaluated as
///     -e^{2r} |alpha - beta*|^2 - e^{-2r} |alpha + beta*|^2
/// so that no cosh/sinh cancellation occurs and E <= 0 holds term by term.
/// Finite for r up to ~350; beyond that the first term saturates to -inf unless
/// alpha == beta* exactly.
double log_parity_correlation(SqueezeParam r, const PhasePoint& alpha, const PhasePoint& beta);

/// Pi(alpha; beta) in (0, 1]. May underflow to 0 for large squeezing and
/// displacements; use log_parity_correlation where the exponent matters.
double parity_correlation(SqueezeParam r, const PhasePoint& alpha, const PhasePoint& beta);

/// Joint Wigner function W(alpha; beta) = (4 / pi^2) Pi(alpha; beta).
double wigner(SqueezeParam r, const PhasePoint& alpha, const PhasePoint& beta);

constexpr double kWignerScale = 0.40528473456935108578;  // 4 / pi^2

}  // namespace nopa
