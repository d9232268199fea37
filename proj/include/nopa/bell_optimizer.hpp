#pragma once

#include <cstdint>
#include <utility>

#include "nopa/types.hpp"

namespace nopa {

/// B = Pi(a1;b1) + Pi(a2;b1) + Pi(a1;b2) - Pi(a2;b2).
BellResult chsh_value(SqueezeParam r, const Quadruplet& q);

/// B(r, J) = 1 + 2 exp(-2J cosh 2r) - exp(-4J e^{2r}) for the settings
/// alpha in {0, sqrt(J)}, beta in {0, -sqrt(J)}.
BellResult chsh_paper_form(SqueezeParam r, DisplacementMagnitude j);

/// dB/dJ of chsh_paper_form.
double chsh_paper_form_slope(SqueezeParam r, DisplacementMagnitude j);

/// Residual of the stationarity condition dB/dJ = 0 written in log form,
///   [ln cosh 2r - 2J cosh 2r] - [2r - 4J e^{2r}].
/// It is zero exactly at the optimum and stays O(1)-scaled for any r.
double stationarity_residual(SqueezeParam r, DisplacementMagnitude j);

/// Exact maximizer of chsh_paper_form over J >= 0:
///   J* = (ln 2 - log1p(e^{-4r})) / (3 e^{2r} - e^{-2r}),
/// which tends to (ln 2 / 3) e^{-2r} for large r. J* = 0 at r = 0.
std::pair<DisplacementMagnitude, BellResult> optimal_J(SqueezeParam r);

struct QuadrupletSearchOptions {
  std::size_t restarts = 8;
  std::uint64_t seed = 0x5eed;
  /// Nelder-Mead iteration budget per start.
  std::size_t max_iterations = 4000;
  /// Simplex spread (max |f_i - f_best|) at which a start is considered converged.
  double f_tolerance = 1e-14;
  /// Run restarts on separate threads. Results do not depend on this flag.
  bool parallel = true;
};

/// Maximizes chsh_value over all eight real parameters of the quadruplet
/// with multi-start Nelder-Mead. The first start is the optimal member of the
/// one-parameter family, so the result never falls below optimal_J(r).
/// Ties within 1e-12 in B go to the quadruplet of smaller total norm.
BellResult optimize_quadruplet(SqueezeParam r, const QuadrupletSearchOptions& options = {});

/// |(pi^2/4) W(alpha; beta) - Pi(alpha; beta)|: the Wigner function, read
/// through scaled delta-function "local realities", reproduces the parity
/// correlation itself.
double lhv_identity_check(SqueezeParam r, const PhasePoint& alpha, const PhasePoint& beta);

}  // namespace nopa
