#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nopa/bell_optimizer.hpp"
#include "nopa/gaussian_core.hpp"
#include "support.hpp"

using namespace nopa;
using nopa::testing::rel_diff;
using nopa::testing::Sampler;

namespace {

const double kAsymptoticB = 1.0 + 3.0 * std::pow(2.0, -4.0 / 3.0);
const double kAsymptoticScaledJ = std::numbers::ln2 / 3.0;

// Independent root of cosh2r e^{-2J cosh2r} = e^{2r} e^{-4J e^{2r}} by bisection
// on the log form, bracketing from J = 0 (where the lhs side is smaller).
double bisect_stationary_J(double r) {
  auto g = [r](double j) {
    return (std::log(std::cosh(2 * r)) - 2 * j * std::cosh(2 * r)) - (2 * r - 4 * j * std::exp(2 * r));
  };
  double lo = 0.0, hi = 1.0;
  while (g(hi) < 0.0) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("chsh_value") {
  SUBCASE("all-zero settings at r = 0 sit on the bound") {
    const auto res = chsh_value(0.0, {});
    CHECK(res.B == 2.0);
    CHECK_FALSE(res.violates_local_bound);
  }
  SUBCASE("one-parameter settings near the r = 1 optimum") {
    const auto res = chsh_value(1.0, Quadruplet::from_magnitude(0.0306));
    // mpmath, 40 digits
    CHECK(res.B == doctest::Approx(2.1838993461209621).epsilon(1e-13));
    CHECK(res.violates_local_bound);
  }
  SUBCASE("one-parameter settings at r = 5") {
    const auto res = chsh_value(5.0, Quadruplet::from_magnitude(kAsymptoticScaledJ * std::exp(-10.0)));
    CHECK(res.B == doctest::Approx(2.1905507882201854).epsilon(1e-13));
    CHECK(std::abs(res.B - 2.1905) < 1e-4);
    CHECK(res.violates_local_bound);
  }
}

TEST_CASE("chsh_paper_form") {
  for (double r : {0.0, 1.0, 7.0, 200.0}) CHECK(chsh_paper_form(r, 0.0).B == 2.0);
  CHECK(chsh_paper_form(0.0, 1.0).B == doctest::Approx(1.2523549275844912).epsilon(1e-14));
  for (double r : {8.0, 12.0, 20.0}) {
    const double j = kAsymptoticScaledJ * std::exp(-2.0 * r);
    CHECK(std::abs(chsh_paper_form(r, j).B - kAsymptoticB) < 1e-6);
  }
  CHECK_THROWS_AS(chsh_paper_form(1.0, -1e-3), InvalidArgument);
  CHECK_THROWS_AS(chsh_paper_form(-1.0, 1e-3), InvalidArgument);
}

TEST_CASE("closed-form family equals the four-correlation sum") {
  Sampler gen(77);
  for (int i = 0; i < 1000; ++i) {
    const double r = gen.uniform(0.0, 5.0);
    const double j = gen.uniform(0.0, 1.0);
    const double direct = chsh_value(r, Quadruplet::from_magnitude(j)).B;
    CHECK(rel_diff(direct, chsh_paper_form(r, j).B) < 1e-12);
  }
}

TEST_CASE("optimal_J") {
  SUBCASE("r = 0 has no violation") {
    const auto [j, res] = optimal_J(0.0);
    CHECK(j.value() == 0.0);
    CHECK(res.B == 2.0);
    CHECK_FALSE(res.violates_local_bound);
  }
  SUBCASE("r = 1 matches bisection and beats a dense grid") {
    const auto [j, res] = optimal_J(1.0);
    CHECK(rel_diff(j.value(), bisect_stationary_J(1.0)) < 1e-12);
    CHECK(j.value() == doctest::Approx(0.030637362412234868).epsilon(1e-13));
    CHECK(res.B == doctest::Approx(2.1838995299760162).epsilon(1e-13));
    double grid_best = 0.0;
    for (int i = 0; i <= 10000; ++i) {
      grid_best = std::max(grid_best, chsh_paper_form(1.0, 0.2 * i / 10000.0).B);
    }
    CHECK(res.B >= grid_best);
    CHECK(std::abs(chsh_paper_form_slope(1.0, j)) < 1e-10);
  }
  SUBCASE("r = 5 approaches the asymptotic scaling") {
    const auto [j, res] = optimal_J(5.0);
    CHECK(rel_diff(j.value() * std::exp(10.0), kAsymptoticScaledJ) < 1e-4);
    CHECK(rel_diff(j.value(), bisect_stationary_J(5.0)) < 1e-10);
  }
  SUBCASE("stationarity residual in log form") {
    for (double r = 0.05; r <= 20.0 + 1e-12; r += 0.05) {
      CAPTURE(r);
      const auto [j, res] = optimal_J(r);
      CHECK(std::abs(stationarity_residual(r, j)) < 1e-10);
    }
  }
  SUBCASE("slope vanishes where it is representable") {
    for (double r : {0.1, 0.5, 1.0, 2.0, 3.0, 4.0}) {
      CAPTURE(r);
      CHECK(std::abs(chsh_paper_form_slope(r, optimal_J(r).first)) < 1e-10);
    }
  }
}

TEST_CASE("violation region is bounded in J") {
  for (double r : {0.25, 0.5, 1.0, 2.0}) {
    CAPTURE(r);
    CHECK(optimal_J(r).second.B > 2.0);
    CHECK(chsh_paper_form(r, 1.0).B < 2.0);
  }
}

TEST_CASE("asymptotic approach as r grows") {
  double previous_b = 0.0, previous_scaled = 0.0;
  for (double r : {2.0, 4.0, 6.0, 8.0}) {
    const auto [j, res] = optimal_J(r);
    const double scaled = j.value() * std::exp(2.0 * r);
    CHECK(res.B > previous_b);
    CHECK(res.B < kAsymptoticB);
    CHECK(scaled > previous_scaled);
    CHECK(scaled < kAsymptoticScaledJ);
    previous_b = res.B;
    previous_scaled = scaled;
  }
  CHECK(std::abs(previous_b - kAsymptoticB) < 1e-10);
}

TEST_CASE("optimize_quadruplet") {
  SUBCASE("no violation at r = 0") {
    // Dense grid over real settings in [-2, 2]^4 as the reference maximum.
    double grid_best = -10.0;
    const int n = 41;
    auto at = [&](int i) { return -2.0 + 4.0 * i / (n - 1); };
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d) {
            const Quadruplet q{PhasePoint{at(a)}, PhasePoint{at(b)}, PhasePoint{at(c)}, PhasePoint{at(d)}};
            grid_best = std::max(grid_best, chsh_value(0.0, q).B);
          }
    CHECK(grid_best == doctest::Approx(2.0).epsilon(1e-15));

    QuadrupletSearchOptions opts;
    opts.restarts = 12;
    const auto res = optimize_quadruplet(0.0, opts);
    CHECK(res.B <= 2.0 + 1e-9);
    CHECK(res.B >= 2.0 - 1e-9);
    CHECK_FALSE(res.violates_local_bound);
  }
  SUBCASE("r = 1 beats the one-parameter optimum") {
    const auto res = optimize_quadruplet(1.0);
    CHECK(res.B >= optimal_J(1.0).second.B - 1e-9);
    CHECK(res.B >= 2.185);
    CHECK(res.B <= kTsirelsonBound);
    CHECK(rel_diff(chsh_value(1.0, res.quadruplet).B, res.B) < 1e-15);
  }
  SUBCASE("r = 5 at least matches the asymptotic value") {
    const auto res = optimize_quadruplet(5.0);
    CHECK(res.B >= 2.1905);
  }
  SUBCASE("deterministic for a fixed seed, independent of threading") {
    QuadrupletSearchOptions a;
    a.seed = 99;
    QuadrupletSearchOptions b = a;
    b.parallel = false;
    const auto x = optimize_quadruplet(2.0, a);
    const auto y = optimize_quadruplet(2.0, b);
    CHECK(x.B == y.B);
    CHECK(x.quadruplet == y.quadruplet);
  }
  SUBCASE("single start returns the refined seed") {
    QuadrupletSearchOptions opts;
    opts.restarts = 1;
    CHECK(optimize_quadruplet(1.0, opts).B >= optimal_J(1.0).second.B - 1e-9);
    opts.restarts = 0;
    CHECK_THROWS_AS(optimize_quadruplet(1.0, opts), InvalidArgument);
  }
  SUBCASE("tiny budget is flagged") {
    QuadrupletSearchOptions opts;
    opts.max_iterations = 3;
    opts.restarts = 2;
    const auto res = optimize_quadruplet(1.0, opts);
    CHECK_FALSE(res.converged);
    CHECK(res.B >= optimal_J(1.0).second.B - 1e-9);
  }
}

TEST_CASE("lhv identity") {
  CHECK(lhv_identity_check(0.0, {0.0}, {0.0}) == 0.0);
  Sampler gen(5);
  for (int i = 0; i < 1000; ++i) {
    CHECK(lhv_identity_check(1.0, gen.in_disk(1.0), gen.in_disk(1.0)) < 1e-14);
  }
  CHECK(lhv_identity_check(10.0, {0.1, 0.1}, {0.1, 0.1}) < 1e-14);
}

TEST_CASE("Tsirelson bound is enforced on every result") {
  CHECK_THROWS_AS(make_bell_result(3.0, {}, 0.0), std::logic_error);
  CHECK_NOTHROW(make_bell_result(-2.8, {}, 0.0));
  CHECK(make_bell_result(2.0, {}, 0.0).violates_local_bound == false);
  CHECK(make_bell_result(-2.0000000001, {}, 0.0).violates_local_bound);
}
