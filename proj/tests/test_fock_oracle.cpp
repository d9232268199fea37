#include <doctest.h>

#include <cmath>
#include <limits>

#include "nopa/fock_oracle.hpp"
#include "nopa/gaussian_core.hpp"
#include "support.hpp"

using namespace nopa;
using namespace nopa::fock;
using nopa::testing::Sampler;

namespace {

// D(alpha) column by column from D|n+1> = (a^dagger - alpha*) D|n> / sqrt(n+1),
// starting at the coherent state. Exact inside the truncated span.
Eigen::MatrixXcd displacement_by_ladder(std::complex<double> alpha, int cutoff) {
  const int dim = cutoff + 1;
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(dim, dim);
  d(0, 0) = std::exp(-0.5 * std::norm(alpha));
  for (int m = 1; m < dim; ++m) d(m, 0) = d(m - 1, 0) * alpha / std::sqrt(double(m));
  for (int n = 0; n + 1 < dim; ++n) {
    for (int m = 0; m < dim; ++m) {
      const std::complex<double> raised = m > 0 ? std::sqrt(double(m)) * d(m - 1, n) : 0.0;
      d(m, n + 1) = (raised - std::conj(alpha) * d(m, n)) / std::sqrt(n + 1.0);
    }
  }
  return d;
}

}  // namespace

TEST_CASE("build_nopa_state") {
  SUBCASE("vacuum") {
    const auto s = build_nopa_state(0.0, 5);
    CHECK(s.coefficients(0, 0) == std::complex<double>(1.0));
    CHECK(s.coefficients.squaredNorm() == 1.0);
    CHECK(s.tail_weight == 0.0);
  }
  SUBCASE("geometric tail at r = 1, N = 40") {
    const auto s = build_nopa_state(1.0, 40);
    // tanh^82(1), mpmath
    CHECK(s.tail_weight == doctest::Approx(2.0014070919655613e-10).epsilon(1e-12));
    CHECK(std::abs(1.0 - s.retained_weight() - s.tail_weight) < 1e-12);
  }
  SUBCASE("cutoff too small") {
    CHECK_THROWS_AS(build_nopa_state(1.0, 2, 1e-6), CutoffTooSmall);
    try {
      build_nopa_state(1.0, 2, 1e-6);
    } catch (const CutoffTooSmall& e) {
      CHECK(e.cutoff() == 2);
      CHECK(e.tail_weight() == doctest::Approx(std::pow(std::tanh(1.0), 6)));
    }
    CHECK_THROWS_AS(build_nopa_state(1.0, 0), InvalidArgument);
  }
  SUBCASE("invariants over random r") {
    Sampler gen(3);
    for (int i = 0; i < 50; ++i) {
      const double r = gen.uniform(0.0, 3.0);
      const int n = 1 + static_cast<int>(gen.uniform(0.0, 80.0));
      const auto s = build_nopa_state(r, n);
      CHECK(std::abs(s.retained_weight() + s.tail_weight - 1.0) < 1e-12);
      for (int a = 0; a <= n; ++a) {
        CHECK(s.coefficients(a, a).real() ==
              doctest::Approx(std::pow(std::tanh(r), a) / std::cosh(r)).epsilon(1e-12));
        for (int b = 0; b <= n; ++b) {
          if (a != b) CHECK(s.coefficients(a, b) == std::complex<double>(0.0));
        }
      }
    }
  }
}

TEST_CASE("cutoff policy") {
  CHECK(required_state_cutoff(0.0, 1e-10) == 1);
  for (double r : {0.1, 1.0, 2.0}) {
    const int n = required_state_cutoff(r, 1e-10);
    CHECK(tail_weight(r, n) <= 1e-10);
    if (n > 1) CHECK(tail_weight(r, n - 1) > 1e-10);
  }
  CHECK(working_cutoff(40, {1.0}, {0.0, 0.5}) == 40 + 10 + 10);
}

TEST_CASE("displacement_matrix") {
  SUBCASE("zero displacement is the identity") {
    const auto d = displacement_matrix({0.0}, 12);
    CHECK((d.entries - Eigen::MatrixXcd::Identity(13, 13)).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("vacuum overlap") {
    for (const PhasePoint a : {PhasePoint{0.3, -0.2}, PhasePoint{1.2, 0.9}, PhasePoint{-2.0}}) {
      CHECK(displacement_matrix(a, 5).entries(0, 0).real() ==
            doctest::Approx(std::exp(-0.5 * a.norm_sq())).epsilon(1e-14));
    }
  }
  SUBCASE("agrees with the ladder construction") {
    const PhasePoint a{0.7, -0.4};
    const auto d = displacement_matrix(a, 30);
    const auto ladder = displacement_by_ladder(a.value(), 30);
    CHECK((d.entries - ladder).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("unitary on the protected block") {
    auto defect = [](const ModeOperator& d, int columns) {
      const Eigen::MatrixXcd cols = d.entries.leftCols(columns);
      return (cols.adjoint() * cols - Eigen::MatrixXcd::Identity(columns, columns)).norm();
    };
    const auto d = displacement_matrix({1.0}, 30);
    CHECK(defect(d, 14) < 1e-8);
    // Weight of D|14> above level 30; same value from scipy's eval_genlaguerre.
    CHECK(defect(d, 15) == doctest::Approx(6.314034704861368e-08).epsilon(1e-4));
    CHECK(defect(displacement_matrix({1.0}, 40), 15) < 1e-12);
    for (int n = 0; n <= 30; ++n) CHECK(d.entries.col(n).norm() <= 1.0 + 1e-12);
  }
  SUBCASE("no overflow at large cutoff") {
    const auto d = displacement_matrix({1.5, 0.5}, 200);
    CHECK(d.entries.allFinite());
    const Eigen::MatrixXcd cols = d.entries.leftCols(120);
    CHECK((cols.adjoint() * cols - Eigen::MatrixXcd::Identity(120, 120)).cwiseAbs().maxCoeff() < 1e-10);
  }
  SUBCASE("D(alpha) D(-alpha) = I on the protected block") {
    const auto plus = displacement_matrix({0.8, 0.3}, 60);
    const auto minus = displacement_matrix({-0.8, -0.3}, 60);
    const Eigen::MatrixXcd prod = plus.entries * minus.entries;
    CHECK((prod.topLeftCorner(25, 25) - Eigen::MatrixXcd::Identity(25, 25)).cwiseAbs().maxCoeff() < 1e-10);
  }
  SUBCASE("rejects bad cutoff") { CHECK_THROWS_AS(displacement_matrix({1.0}, 0), InvalidArgument); }
}

TEST_CASE("parity_matrix") {
  const auto p1 = parity_matrix(1);
  CHECK(p1.entries(0, 0) == std::complex<double>(1.0));
  CHECK(p1.entries(1, 1) == std::complex<double>(-1.0));
  const auto p = parity_matrix(17);
  CHECK((p.entries * p.entries - Eigen::MatrixXcd::Identity(18, 18)).cwiseAbs().maxCoeff() == 0.0);
  for (int n = 0; n <= 17; ++n) CHECK(std::abs(std::abs(p.entries(n, n).real()) - 1.0) == 0.0);
}

TEST_CASE("displaced parity") {
  const PhasePoint a{0.6, -0.5};
  const auto op = displaced_parity(a, 40, working_cutoff(40, a, {0.0}));
  CHECK((op.entries - op.entries.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  // D(a) P D(a)^dagger = D(2a) P
  const auto twice = displacement_matrix({1.2, -1.0}, 40);
  const Eigen::MatrixXcd expected = twice.entries * parity_matrix(40).entries;
  CHECK((op.entries.topLeftCorner(30, 30) - expected.topLeftCorner(30, 30)).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("oracle_correlation") {
  SUBCASE("vacuum parity") { CHECK(oracle_correlation(0.0, {0.0}, {0.0}, 5) == doctest::Approx(1.0).epsilon(1e-15)); }
  SUBCASE("vacuum with displaced second mode") {
    CHECK(std::abs(oracle_correlation(0.0, {0.0}, {0.5, 0.5}, 40) - std::exp(-1.0)) < 1e-10);
  }
  SUBCASE("r = 0 Wigner at |alpha|^2 = 1") {
    CHECK(std::abs(kWignerScale * oracle_correlation(0.0, {0.0, 1.0}, {0.0}, 40) -
                   kWignerScale * std::exp(-2.0)) < 1e-12);
  }
  SUBCASE("r = 1, alpha = 0.3, beta = -0.3") {
    const double expected = std::exp(-2 * std::cosh(2.0) * 0.18 + 2 * std::sinh(2.0) * (-0.18));
    CHECK(std::abs(oracle_correlation(1.0, {0.3}, {-0.3}, 60) - expected) < 1e-8);
  }
  SUBCASE("r = 1 one-parameter settings at J = 0.03") {
    const double s = std::sqrt(0.03);
    CHECK(std::abs(oracle_correlation(1.0, {s}, {-s}, 60) - std::exp(-4 * 0.03 * std::exp(2.0))) < 1e-8);
  }
  SUBCASE("pairs always generated together") {
    const int n = required_state_cutoff(2.0, 1e-10);
    CHECK(std::abs(oracle_correlation(2.0, {0.0}, {0.0}, n) - 1.0) <= 2.0 * tail_weight(2.0, n));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(oracle_correlation(1.0, {0.1}, {0.1}, 2), CutoffTooSmall);
    OracleOptions loose;
    loose.tail_tolerance = std::numeric_limits<double>::infinity();
    loose.convergence_tolerance = 1e-12;
    CHECK_THROWS_AS(oracle_correlation(1.0, {0.3}, {-0.3}, 8, loose), ConvergenceNotReached);
    loose.convergence_tolerance = 1e-9;
    CHECK_NOTHROW(oracle_correlation(1.0, {0.3}, {-0.3}, 60, loose));
  }
  SUBCASE("random agreement with the closed form") {
    Sampler gen(11);
    for (int i = 0; i < 25; ++i) {
      const double r = gen.uniform(0.0, 1.5);
      const PhasePoint a = gen.in_disk(1.5), b = gen.in_disk(1.5);
      CHECK(std::abs(oracle_correlation(r, a, b) - parity_correlation(r, a, b)) < 1e-6);
    }
  }
}

TEST_CASE("convergence_report") {
  SUBCASE("deltas shrink with the cutoff") {
    const auto rows = convergence_report(0.5, {0.2, 0.1}, {-0.2, 0.1}, {10, 20, 40});
    REQUIRE(rows.size() == 3);
    CHECK_FALSE(rows[0].delta.has_value());
    CHECK(*rows[2].delta < *rows[1].delta);
  }
  SUBCASE("vacuum needs no photons") {
    const auto rows = convergence_report(0.0, {0.3}, {0.2, 0.2}, {5, 10, 20});
    CHECK(rows[0].value == doctest::Approx(rows[2].value).epsilon(1e-14));
    CHECK(*rows[1].delta < 1e-14);
    CHECK(*rows[2].delta < 1e-14);
  }
  SUBCASE("strong squeezing converges slowly") {
    const auto rows = convergence_report(2.0, {0.1}, {-0.1}, {20, 40, 80});
    for (const auto& row : rows) MESSAGE("r=2 cutoff " << row.cutoff << " value " << row.value
                                          << " delta " << row.delta.value_or(0.0));
    CHECK(*rows[2].delta < *rows[1].delta);
  }
  SUBCASE("cutoffs must increase") {
    CHECK_THROWS_AS(convergence_report(0.5, {0.0}, {0.0}, {10, 10}), InvalidArgument);
  }
}
