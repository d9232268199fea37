#include "nopa/quadrature.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

#include "nopa/gaussian_core.hpp"

namespace nopa {

GaussHermiteRule gauss_hermite_rule(int order) {
  if (order < 1) throw InvalidArgument("Gauss-Hermite order must be >= 1");
  const int n = order;
  GaussHermiteRule rule{std::vector<double>(n), std::vector<double>(n)};
  const double pi_quarter = std::pow(std::numbers::pi, -0.25);

  double z = 0.0;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Asymptotic initial guesses for the largest roots, then extrapolation.
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(n, 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * rule.nodes[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * rule.nodes[1];
    } else {
      z = 2.0 * z - rule.nodes[i - 2];
    }

    double derivative = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = pi_quarter;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
      }
      derivative = std::sqrt(2.0 * n) * p2;
      const double previous = z;
      z = previous - p1 / derivative;
      if (std::abs(z - previous) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    rule.nodes[i] = z;
    rule.nodes[n - 1 - i] = -z;
    rule.weights[i] = 2.0 / (derivative * derivative);
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  return rule;
}

double integrate_gaussian_4d(const Integrand4& f, const std::array<double, 16>& precision,
                             int order) {
  const Eigen::Matrix4d h = Eigen::Map<const Eigen::Matrix<double, 4, 4, Eigen::RowMajor>>(
      precision.data());
  const Eigen::LLT<Eigen::Matrix4d> llt(h);
  if (llt.info() != Eigen::Success) {
    throw InvalidArgument("reference precision matrix is not positive definite");
  }
  const Eigen::Matrix4d lower = llt.matrixL();
  const Eigen::Matrix4d map = std::numbers::sqrt2 * lower.transpose().inverse();
  const double jacobian = 4.0 / lower.diagonal().prod();

  const GaussHermiteRule rule = gauss_hermite_rule(order);
  const auto n = static_cast<std::size_t>(order);
  double total = 0.0;
  std::array<double, 4> x{};
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        double partial = 0.0;
        for (std::size_t d = 0; d < n; ++d) {
          const Eigen::Vector4d z(rule.nodes[a], rule.nodes[b], rule.nodes[c], rule.nodes[d]);
          const Eigen::Vector4d mapped = map * z;
          for (int i = 0; i < 4; ++i) x[i] = mapped[i];
          partial += rule.weights[d] * f(x) * std::exp(z.squaredNorm());
        }
        total += rule.weights[a] * rule.weights[b] * rule.weights[c] * partial;
      }
    }
  }
  return jacobian * total;
}

std::array<double, 16> wigner_precision(SqueezeParam r, double step) {
  auto g = [r](const std::array<double, 4>& x) {
    return -std::log(wigner(r, PhasePoint{x[0], x[1]}, PhasePoint{x[2], x[3]}));
  };
  std::array<double, 16> hessian{};
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) {
      auto at = [&](double si, double sj) {
        std::array<double, 4> x{};
        x[i] += si * step;
        x[j] += sj * step;
        return g(x);
      };
      const double value =
          (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * step * step);
      hessian[4 * i + j] = value;
      hessian[4 * j + i] = value;
    }
  }
  return hessian;
}

double wigner_normalization(SqueezeParam r, int order, double reference_scale) {
  if (!(reference_scale > 0.0)) throw InvalidArgument("reference scale must be positive");
  std::array<double, 16> precision = wigner_precision(r);
  for (double& entry : precision) entry *= reference_scale;
  return integrate_gaussian_4d(
      [r](const std::array<double, 4>& x) {
        return wigner(r, PhasePoint{x[0], x[1]}, PhasePoint{x[2], x[3]});
      },
      precision, order);
}

}  // namespace nopa
