#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>

namespace nopa::detail {

template <std::size_t N>
struct SimplexResult {
  std::array<double, N> x{};
  double f = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Derivative-free minimization of f from x0 (Nelder-Mead with the standard
/// reflection/expansion/contraction/shrink coefficients 1, 2, 1/2, 1/2).
/// The initial simplex puts one vertex `step` along each axis. When the
/// vertex values agree to f_tolerance the simplex is rebuilt around the best
/// point; convergence is declared once a rebuild makes no progress.
template <std::size_t N, typename F>
SimplexResult<N> nelder_mead(F&& f, const std::array<double, N>& x0, double step,
                             std::size_t max_iterations, double f_tolerance) {
  using Point = std::array<double, N>;
  std::array<Point, N + 1> vertex;
  std::array<double, N + 1> value;

  auto rebuild = [&](const Point& centre, double h) {
    vertex[0] = centre;
    value[0] = f(centre);
    for (std::size_t i = 0; i < N; ++i) {
      vertex[i + 1] = centre;
      vertex[i + 1][i] += h;
      value[i + 1] = f(vertex[i + 1]);
    }
  };
  auto affine = [](const Point& a, const Point& b, double t) {
    Point p;
    for (std::size_t i = 0; i < N; ++i) p[i] = a[i] + t * (b[i] - a[i]);
    return p;
  };

  rebuild(x0, step);
  SimplexResult<N> result;
  double last_restart_best = value[0];
  std::array<std::size_t, N + 1> order;

  for (std::size_t it = 0; it < max_iterations; ++it) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[N - 1];
    result.iterations = it;

    if (value[worst] - value[best] <= f_tolerance) {
      if (value[best] >= last_restart_best - f_tolerance && it > 0) {
        result.converged = true;
        break;
      }
      last_restart_best = value[best];
      double extent = 0.0;
      for (std::size_t v = 0; v <= N; ++v)
        for (std::size_t i = 0; i < N; ++i)
          extent = std::max(extent, std::abs(vertex[v][i] - vertex[best][i]));
      const Point centre = vertex[best];
      rebuild(centre, std::max(extent, step * 1e-3));
      continue;
    }

    Point centroid{};
    for (std::size_t v = 0; v <= N; ++v) {
      if (v == worst) continue;
      for (std::size_t i = 0; i < N; ++i) centroid[i] += vertex[v][i] / N;
    }

    const Point reflected = affine(centroid, vertex[worst], -1.0);
    const double f_reflected = f(reflected);
    if (f_reflected < value[best]) {
      const Point expanded = affine(centroid, vertex[worst], -2.0);
      const double f_expanded = f(expanded);
      if (f_expanded < f_reflected) {
        vertex[worst] = expanded;
        value[worst] = f_expanded;
      } else {
        vertex[worst] = reflected;
        value[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < value[second_worst]) {
      vertex[worst] = reflected;
      value[worst] = f_reflected;
      continue;
    }

    const bool outside = f_reflected < value[worst];
    const Point contracted =
        outside ? affine(centroid, reflected, 0.5) : affine(centroid, vertex[worst], 0.5);
    const double f_contracted = f(contracted);
    if (f_contracted < (outside ? f_reflected : value[worst])) {
      vertex[worst] = contracted;
      value[worst] = f_contracted;
      continue;
    }

    for (std::size_t v = 0; v <= N; ++v) {
      if (v == best) continue;
      vertex[v] = affine(vertex[best], vertex[v], 0.5);
      value[v] = f(vertex[v]);
    }
  }

  const auto best = static_cast<std::size_t>(
      std::min_element(value.begin(), value.end()) - value.begin());
  result.x = vertex[best];
  result.f = value[best];
  return result;
}

}  // namespace nopa::detail
