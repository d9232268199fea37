#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <optional>
#include <tuple>

#include "nopa/bell_optimizer.hpp"
#include "nopa/fock_oracle.hpp"
#include "nopa/gaussian_core.hpp"
#include "nopa/sweep.hpp"

namespace py = pybind11;
using namespace py::literals;

namespace {

using Complex = std::complex<double>;
using QuadTuple = std::tuple<Complex, Complex, Complex, Complex>;

nopa::PhasePoint point(Complex z) { return nopa::PhasePoint(z); }

QuadTuple as_tuple(const nopa::Quadruplet& q) {
  return {q.alpha1.value(), q.alpha2.value(), q.beta1.value(), q.beta2.value()};
}

nopa::Quadruplet as_quadruplet(const QuadTuple& t) {
  return {point(std::get<0>(t)), point(std::get<1>(t)), point(std::get<2>(t)),
          point(std::get<3>(t))};
}

nopa::sweep::SweepConfig grid_config(nopa::sweep::Mode mode, std::optional<double> r_min,
                                     std::optional<double> r_max, std::optional<int> r_steps) {
  auto config = nopa::sweep::SweepConfig::defaults(mode);
  if (r_min) config.r_grid.min = *r_min;
  if (r_max) config.r_grid.max = *r_max;
  if (r_steps) config.r_grid.steps = *r_steps;
  return config;
}

py::dict record_dict(const nopa::sweep::SweepRecord& rec) {
  py::dict d("r"_a = rec.r, "J"_a = rec.J, "B"_a = rec.B, "violates"_a = rec.violates);
  if (rec.J_star) d["J_star"] = *rec.J_star;
  if (rec.B_star) d["B_star"] = *rec.B_star;
  if (rec.J_star_times_e2r) d["J_star_times_e2r"] = *rec.J_star_times_e2r;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Displaced-parity CHSH tests of the two-mode squeezed vacuum";

  py::register_exception<nopa::fock::CutoffTooSmall>(m, "CutoffTooSmall", PyExc_RuntimeError);
  py::register_exception<nopa::sweep::ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.attr("LOCAL_BOUND") = nopa::kLocalBound;
  m.attr("TSIRELSON_BOUND") = nopa::kTsirelsonBound;

  py::class_<nopa::BellResult>(m, "BellResult")
      .def_readonly("B", &nopa::BellResult::B)
      .def_readonly("r", &nopa::BellResult::r)
      .def_readonly("violates_local_bound", &nopa::BellResult::violates_local_bound)
      .def_readonly("converged", &nopa::BellResult::converged)
      .def_property_readonly("quadruplet",
                             [](const nopa::BellResult& b) { return as_tuple(b.quadruplet); })
      .def("__repr__", [](const nopa::BellResult& b) {
        return "BellResult(B=" + nopa::sweep::format_double(b.B) +
               ", r=" + nopa::sweep::format_double(b.r) +
               ", violates_local_bound=" + (b.violates_local_bound ? "True" : "False") + ")";
      });

  m.def(
      "parity_correlation",
      [](double r, Complex a, Complex b) { return nopa::parity_correlation(r, point(a), point(b)); },
      "r"_a, "alpha"_a, "beta"_a);
  m.def(
      "log_parity_correlation",
      [](double r, Complex a, Complex b) {
        return nopa::log_parity_correlation(r, point(a), point(b));
      },
      "r"_a, "alpha"_a, "beta"_a);
  m.def(
      "wigner", [](double r, Complex a, Complex b) { return nopa::wigner(r, point(a), point(b)); },
      "r"_a, "alpha"_a, "beta"_a);

  m.def(
      "chsh_value",
      [](double r, const QuadTuple& q) { return nopa::chsh_value(r, as_quadruplet(q)); }, "r"_a,
      "quadruplet"_a, "quadruplet is (alpha1, alpha2, beta1, beta2)");
  m.def(
      "chsh_paper_form", [](double r, double j) { return nopa::chsh_paper_form(r, j); }, "r"_a,
      "J"_a);
  m.def(
      "optimal_J",
      [](double r) {
        const auto [j, result] = nopa::optimal_J(r);
        return py::make_tuple(j.value(), result);
      },
      "r"_a);
  m.def(
      "optimize_quadruplet",
      [](double r, std::size_t restarts, std::uint64_t seed, std::size_t max_iterations,
         bool parallel) {
        nopa::QuadrupletSearchOptions options;
        options.restarts = restarts;
        options.seed = seed;
        options.max_iterations = max_iterations;
        options.parallel = parallel;
        py::gil_scoped_release release;
        return nopa::optimize_quadruplet(r, options);
      },
      "r"_a, "restarts"_a = 8, "seed"_a = 0x5eed, "max_iterations"_a = 4000, "parallel"_a = true);
  m.def(
      "lhv_identity_check",
      [](double r, Complex a, Complex b) { return nopa::lhv_identity_check(r, point(a), point(b)); },
      "r"_a, "alpha"_a, "beta"_a);

  m.def(
      "tail_weight", [](double r, int cutoff) { return nopa::fock::tail_weight(r, cutoff); },
      "r"_a, "cutoff"_a);
  m.def(
      "recommended_cutoff",
      [](double r, double tail_tolerance, double amplitude_tolerance) {
        nopa::fock::OracleOptions options;
        options.tail_tolerance = tail_tolerance;
        options.amplitude_tolerance = amplitude_tolerance;
        return nopa::fock::recommended_cutoff(r, options);
      },
      "r"_a, "tail_tolerance"_a = 1e-10, "amplitude_tolerance"_a = 1e-7);
  m.def(
      "build_nopa_state",
      [](double r, int cutoff, std::optional<double> tail_tolerance) {
        const auto state = nopa::fock::build_nopa_state(r, cutoff, tail_tolerance);
        return py::make_tuple(state.coefficients, state.tail_weight);
      },
      "r"_a, "cutoff"_a, "tail_tolerance"_a = py::none(),
      "Returns (coefficients, tail_weight); coefficients[n, m] is the amplitude of |n>|m>.");
  m.def(
      "displacement_matrix",
      [](Complex a, int cutoff) { return nopa::fock::displacement_matrix(point(a), cutoff).entries; },
      "alpha"_a, "cutoff"_a);
  m.def(
      "displaced_parity",
      [](Complex a, int state_cutoff, int working_cutoff) {
        return nopa::fock::displaced_parity(point(a), state_cutoff, working_cutoff).entries;
      },
      "alpha"_a, "state_cutoff"_a, "working_cutoff"_a);
  m.def(
      "oracle_correlation",
      [](double r, Complex a, Complex b, std::optional<int> cutoff, double tail_tolerance,
         double amplitude_tolerance) {
        nopa::fock::OracleOptions options;
        options.tail_tolerance = tail_tolerance;
        options.amplitude_tolerance = amplitude_tolerance;
        py::gil_scoped_release release;
        return cutoff ? nopa::fock::oracle_correlation(r, point(a), point(b), *cutoff, options)
                      : nopa::fock::oracle_correlation(r, point(a), point(b), options);
      },
      "r"_a, "alpha"_a, "beta"_a, "cutoff"_a = py::none(), "tail_tolerance"_a = 1e-10,
      "amplitude_tolerance"_a = 1e-7);

  m.def(
      "surface",
      [](std::optional<double> r_min, std::optional<double> r_max, std::optional<int> r_steps,
         std::optional<double> j_min, std::optional<double> j_max, std::optional<int> j_steps,
         std::optional<bool> log_j, std::optional<double> threshold, bool filter) {
        auto config = grid_config(nopa::sweep::Mode::Surface, r_min, r_max, r_steps);
        if (j_min) config.j_grid.min = *j_min;
        if (j_max) config.j_grid.max = *j_max;
        if (j_steps) config.j_grid.steps = *j_steps;
        if (log_j) config.j_grid.log_spaced = *log_j;
        if (threshold) config.threshold = *threshold;
        if (!filter) config.threshold.reset();
        nopa::sweep::validate(config);
        std::vector<nopa::sweep::SweepRecord> records;
        {
          py::gil_scoped_release release;
          records = nopa::sweep::run_surface(config);
        }
        py::list out;
        for (const auto& rec : records) out.append(record_dict(rec));
        return out;
      },
      py::kw_only(), "r_min"_a = py::none(), "r_max"_a = py::none(), "r_steps"_a = py::none(),
      "j_min"_a = py::none(), "j_max"_a = py::none(), "j_steps"_a = py::none(),
      "log_j"_a = py::none(), "threshold"_a = py::none(), "filter"_a = true,
      "B(r, J) grid as a list of dicts; by default only points with B > 2 are kept.");
  m.def(
      "optimum_curve",
      [](std::optional<double> r_min, std::optional<double> r_max, std::optional<int> r_steps) {
        auto config = grid_config(nopa::sweep::Mode::OptimumCurve, r_min, r_max, r_steps);
        nopa::sweep::validate(config);
        py::list out;
        for (const auto& rec : nopa::sweep::run_optimum_curve(config)) out.append(record_dict(rec));
        return out;
      },
      py::kw_only(), "r_min"_a = py::none(), "r_max"_a = py::none(), "r_steps"_a = py::none());
}
