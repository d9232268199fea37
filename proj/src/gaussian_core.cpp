#include "nopa/gaussian_core.hpp"

#include <cmath>

namespace nopa {

namespace {

// c * x with the convention 0 * inf = 0, so that a vanishing quadratic term
// stays exact when e^{2r} overflows.
double scaled(double c, double x) { return x == 0.0 ? 0.0 : c * x; }

}  // namespace

double log_parity_correlation(SqueezeParam r, const PhasePoint& alpha, const PhasePoint& beta) {
  // alpha - beta* and alpha + beta*
  const double d_re = alpha.re() - beta.re();
  const double d_im = alpha.im() + beta.im();
  const double s_re = alpha.re() + beta.re();
  const double s_im = alpha.im() - beta.im();
  const double grow = std::exp(2.0 * r.value());
  const double shrink = std::exp(-2.0 * r.value());
  return -scaled(grow, d_re * d_re + d_im * d_im) - scaled(shrink, s_re * s_re + s_im * s_im);
}

double parity_correlation(SqueezeParam r, const PhasePoint& alpha, const PhasePoint& beta) {
  return std::exp(log_parity_correlation(r, alpha, beta));
}

double wigner(SqueezeParam r, const PhasePoint& alpha, const PhasePoint& beta) {
  return kWignerScale * parity_correlation(r, alpha, beta);
}

}  // namespace nopa
