#include "nopa/bell_optimizer.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "nelder_mead.hpp"
#include "nopa/gaussian_core.hpp"
#include "parallel.hpp"

namespace nopa {

namespace {

double scaled(double c, double x) { return x == 0.0 ? 0.0 : c * x; }

using Params = std::array<double, 8>;

Params to_params(const Quadruplet& q) {
  return {q.alpha1.re(), q.alpha1.im(), q.alpha2.re(), q.alpha2.im(),
          q.beta1.re(),  q.beta1.im(),  q.beta2.re(),  q.beta2.im()};
}

Quadruplet from_params(const Params& p) {
  return {PhasePoint{p[0], p[1]}, PhasePoint{p[2], p[3]}, PhasePoint{p[4], p[5]},
          PhasePoint{p[6], p[7]}};
}

double chsh_raw(SqueezeParam r, const Quadruplet& q) {
  return parity_correlation(r, q.alpha1, q.beta1) + parity_correlation(r, q.alpha2, q.beta1) +
         parity_correlation(r, q.alpha1, q.beta2) - parity_correlation(r, q.alpha2, q.beta2);
}

struct StartOutcome {
  Quadruplet q;
  double B = 0.0;
  bool converged = false;
};

bool better(const StartOutcome& candidate, const StartOutcome& incumbent) {
  constexpr double kTie = 1e-12;
  if (candidate.B > incumbent.B + kTie) return true;
  if (candidate.B < incumbent.B - kTie) return false;
  return candidate.q.total_norm_sq() < incumbent.q.total_norm_sq();
}

}  // namespace

BellResult chsh_value(SqueezeParam r, const Quadruplet& q) {
  return make_bell_result(chsh_raw(r, q), q, r);
}

BellResult chsh_paper_form(SqueezeParam r, DisplacementMagnitude j) {
  const double grow = std::exp(2.0 * r.value());
  const double shrink = std::exp(-2.0 * r.value());
  // 2J cosh 2r = J (e^{2r} + e^{-2r})
  const double single = -(scaled(grow, j.value()) + scaled(shrink, j.value()));
  const double joint = -4.0 * scaled(grow, j.value());
  const double B = 1.0 + 2.0 * std::exp(single) - std::exp(joint);
  return make_bell_result(B, Quadruplet::from_magnitude(j), r);
}

double chsh_paper_form_slope(SqueezeParam r, DisplacementMagnitude j) {
  const double grow = std::exp(2.0 * r.value());
  const double shrink = std::exp(-2.0 * r.value());
  const double two_cosh = grow + shrink;
  return -2.0 * two_cosh * std::exp(-j.value() * two_cosh) +
         4.0 * grow * std::exp(-4.0 * scaled(grow, j.value()));
}

double stationarity_residual(SqueezeParam r, DisplacementMagnitude j) {
  const double grow = std::exp(2.0 * r.value());
  const double shrink = std::exp(-2.0 * r.value());
  // ln cosh 2r = 2r + log1p(e^{-4r}) - ln 2
  const double log_cosh = 2.0 * r.value() + std::log1p(shrink * shrink) - std::numbers::ln2;
  const double lhs = log_cosh - j.value() * (grow + shrink);
  const double rhs = 2.0 * r.value() - 4.0 * j.value() * grow;
  return lhs - rhs;
}

std::pair<DisplacementMagnitude, BellResult> optimal_J(SqueezeParam r) {
  if (r.value() == 0.0) {
    DisplacementMagnitude zero{0.0};
    return {zero, chsh_paper_form(r, zero)};
  }
  const double grow = std::exp(2.0 * r.value());
  const double shrink = std::exp(-2.0 * r.value());
  const double numerator = std::numbers::ln2 - std::log1p(shrink * shrink);
  DisplacementMagnitude j{numerator / (3.0 * grow - shrink)};
  return {j, chsh_paper_form(r, j)};
}

BellResult optimize_quadruplet(SqueezeParam r, const QuadrupletSearchOptions& options) {
  if (options.restarts < 1) throw InvalidArgument("optimize_quadruplet needs restarts >= 1");

  const auto [j_star, seed_result] = optimal_J(r);
  const Params seed = to_params(seed_result.quadruplet);
  // Initial box |Re|, |Im| <= 2 sqrt(J*); at r = 0 there is no natural scale.
  const double box = j_star.value() > 0.0 ? 2.0 * std::sqrt(j_star.value()) : 1.0;

  std::vector<Params> starts{seed};
  std::mt19937_64 engine(options.seed);
  for (std::size_t k = 1; k < options.restarts; ++k) {
    Params p{};
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double u = 2.0 * detail::unit_uniform(engine) - 1.0;
      // Odd starts perturb the one-parameter optimum, even starts cover the box.
      p[i] = (k % 2 == 1) ? std::clamp(seed[i] + 0.5 * box * u, -box, box) : box * u;
    }
    starts.push_back(p);
  }

  auto objective = [r](const Params& p) { return -chsh_raw(r, from_params(p)); };

  std::vector<StartOutcome> outcomes(starts.size());
  detail::parallel_for(starts.size(), options.parallel ? 0u : 1u, [&](std::size_t k) {
    const auto found = detail::nelder_mead(objective, starts[k], 0.25 * box,
                                           options.max_iterations, options.f_tolerance);
    outcomes[k] = {from_params(found.x), -found.f, found.converged};
  });

  StartOutcome best{seed_result.quadruplet, seed_result.B, true};
  for (const auto& outcome : outcomes) {
    if (better(outcome, best)) best = outcome;
  }
  return make_bell_result(best.B, best.q, r, best.converged);
}

double lhv_identity_check(SqueezeParam r, const PhasePoint& alpha, const PhasePoint& beta) {
  constexpr double kInverseScale = std::numbers::pi * std::numbers::pi / 4.0;
  return std::abs(kInverseScale * wigner(r, alpha, beta) - parity_correlation(r, alpha, beta));
}

}  // namespace nopa
