#pragma once

#include <array>
#include <functional>
#include <vector>

#include "nopa/types.hpp"

namespace nopa {

/// Nodes and weights for the integral of f(x) exp(-x^2) over the real line.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Order-n rule from Newton iteration on the orthonormal Hermite recurrence.
GaussHermiteRule gauss_hermite_rule(int order);

using Integrand4 = std::function<double(const std::array<double, 4>&)>;

/// Integral over R^4 of f, for f close to a centred Gaussian with precision
/// matrix `precision` (row-major, symmetric positive definite):
/// x = sqrt(2) R^{-T} z with precision = R R^T maps the reference Gaussian onto
/// exp(-|z|^2), and the tensor-product rule integrates f(x(z)) e^{|z|^2}.
double integrate_gaussian_4d(const Integrand4& f, const std::array<double, 16>& precision,
                             int order);

/// Hessian of -ln W(alpha; beta) at the origin over (Re a, Im a, Re b, Im b),
/// by central differences of the library's Wigner function.
std::array<double, 16> wigner_precision(SqueezeParam r, double step = 1e-2);

/// Integral of W over both phase planes with a tensor-product Gauss-Hermite
/// rule of the given per-axis order. `reference_scale` multiplies the
/// precision used for the change of variables; 1 absorbs the Gaussian weight
/// exactly, other values leave a non-trivial Gaussian for the rule.
double wigner_normalization(SqueezeParam r, int order = 40, double reference_scale = 1.0);

}  // namespace nopa
