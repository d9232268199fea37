#include "nopa/sweep.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>

#include <nlohmann/json.hpp>

#include "nopa/bell_optimizer.hpp"
#include "nopa/fock_oracle.hpp"
#include "nopa/gaussian_core.hpp"
#include "parallel.hpp"

using Json = nlohmann::ordered_json;

namespace nopa::sweep {

ConfigError::ConfigError(std::string field, const std::string& message)
    : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

std::vector<double> GridSpec::points() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max(steps, 0)));
  if (steps == 1) {
    out.push_back(min);
    return out;
  }
  for (int i = 0; i < steps; ++i) {
    const double t = static_cast<double>(i) / (steps - 1);
    if (log_spaced) {
      out.push_back(std::exp(std::log(min) + t * (std::log(max) - std::log(min))));
    } else {
      out.push_back(min + t * (max - min));
    }
  }
  // Pin the endpoints against rounding in exp/log.
  out.front() = min;
  out.back() = max;
  return out;
}

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::Surface: return "surface";
    case Mode::OptimumCurve: return "optimum-curve";
    case Mode::ValidateOracle: return "validate-oracle";
    case Mode::QuadrupletSearch: return "quadruplet-search";
  }
  return "unknown";
}

std::string_view to_string(OutputFormat format) {
  return format == OutputFormat::Csv ? "csv" : "json";
}

Mode parse_mode(std::string_view text) {
  for (Mode m : {Mode::Surface, Mode::OptimumCurve, Mode::ValidateOracle, Mode::QuadrupletSearch}) {
    if (text == to_string(m)) return m;
  }
  throw ConfigError("mode", "unknown mode '" + std::string(text) + "'");
}

OutputFormat parse_format(std::string_view text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw ConfigError("format", "unknown format '" + std::string(text) + "'");
}

SweepConfig SweepConfig::defaults(Mode mode) {
  SweepConfig c;
  c.mode = mode;
  switch (mode) {
    case Mode::Surface:
      c.r_grid = {0.0, 3.0, 61, false};
      c.j_grid = {1e-5, 0.5, 81, true};
      c.threshold = kLocalBound;
      break;
    case Mode::OptimumCurve:
      c.r_grid = {0.0, 8.0, 33, false};
      c.j_grid = {0.0, 0.0, 1, false};
      break;
    case Mode::ValidateOracle:
      c.r_grid = {0.0, 2.0, 5, false};
      c.j_grid = {0.0, 0.0, 1, false};
      break;
    case Mode::QuadrupletSearch:
      c.r_grid = {0.0, 2.0, 5, false};
      c.j_grid = {0.0, 0.0, 1, false};
      break;
  }
  return c;
}

namespace {

void check_grid(const GridSpec& g, const std::string& name, bool non_negative) {
  if (!std::isfinite(g.min) || !std::isfinite(g.max)) {
    throw ConfigError(name + "-min/" + name + "-max", "grid bounds must be finite");
  }
  if (g.steps < 1) throw ConfigError(name + "-steps", "must be >= 1");
  if (g.min > g.max) throw ConfigError(name + "-min", "must not exceed " + name + "-max");
  if (non_negative && g.min < 0.0) throw ConfigError(name + "-min", "must be >= 0");
  if (g.log_spaced && g.min <= 0.0) {
    throw ConfigError(name + "-min", "log-spaced grid needs a positive lower bound");
  }
}

}  // namespace

void validate(const SweepConfig& config) {
  check_grid(config.r_grid, "r", true);
  if (config.mode == Mode::Surface) check_grid(config.j_grid, "j", true);
  if (config.threshold && !std::isfinite(*config.threshold)) {
    throw ConfigError("threshold", "must be finite");
  }
  if (config.mode == Mode::ValidateOracle) {
    if (config.r_grid.max > kOracleMaxSqueezing) {
      throw ConfigError("r-max", "validate-oracle supports r <= 3 only");
    }
    if (!(config.tolerance > 0.0)) throw ConfigError("tolerance", "must be positive");
    if (config.samples < 1) throw ConfigError("samples", "must be >= 1");
    if (!(config.max_amplitude >= 0.0) || !std::isfinite(config.max_amplitude)) {
      throw ConfigError("max-amplitude", "must be finite and >= 0");
    }
    if (config.cutoff && *config.cutoff < 1) throw ConfigError("cutoff", "must be >= 1");
  }
  if (config.mode == Mode::QuadrupletSearch && config.restarts < 1) {
    throw ConfigError("restarts", "must be >= 1");
  }
}

std::vector<SweepRecord> run_surface(const SweepConfig& config) {
  validate(config);
  const auto rs = config.r_grid.points();
  const auto js = config.j_grid.points();
  std::vector<SweepRecord> grid(rs.size() * js.size());
  detail::parallel_for(rs.size(), config.threads, [&](std::size_t i) {
    for (std::size_t k = 0; k < js.size(); ++k) {
      const BellResult res = chsh_paper_form(rs[i], js[k]);
      grid[i * js.size() + k] = {rs[i], js[k], res.B, res.violates_local_bound, {}, {}, {}};
    }
  });
  if (!config.threshold) return grid;
  std::vector<SweepRecord> kept;
  for (const auto& rec : grid) {
    if (rec.B > *config.threshold) kept.push_back(rec);
  }
  return kept;
}

std::vector<SweepRecord> run_optimum_curve(const SweepConfig& config) {
  validate(config);
  std::vector<SweepRecord> out;
  for (double r : config.r_grid.points()) {
    const auto [j, res] = optimal_J(r);
    out.push_back({r, j.value(), res.B, res.violates_local_bound, j.value(), res.B,
                   j.value() * std::exp(2.0 * r)});
  }
  return out;
}

OracleRun run_validate_oracle(const SweepConfig& config) {
  validate(config);
  const auto rs = config.r_grid.points();
  const auto per_r = static_cast<std::size_t>(config.samples);

  // Draw every displacement up front so the sample set does not depend on threads.
  std::mt19937_64 engine(config.seed);
  auto draw = [&] {
    const double radius = config.max_amplitude * std::sqrt(detail::unit_uniform(engine));
    const double angle = 2.0 * std::numbers::pi * detail::unit_uniform(engine);
    return PhasePoint{radius * std::cos(angle), radius * std::sin(angle)};
  };
  OracleRun run;
  run.records.resize(rs.size() * per_r);
  for (std::size_t i = 0; i < rs.size(); ++i) {
    for (std::size_t s = 0; s < per_r; ++s) {
      auto& rec = run.records[i * per_r + s];
      rec.r = rs[i];
      rec.alpha = draw();
      rec.beta = draw();
    }
  }

  fock::OracleOptions options;
  detail::parallel_for(run.records.size(), config.threads, [&](std::size_t idx) {
    auto& rec = run.records[idx];
    rec.closed_form = parity_correlation(rec.r, rec.alpha, rec.beta);
    rec.cutoff = config.cutoff ? *config.cutoff
                               : fock::recommended_cutoff(rec.r, options);
    try {
      rec.oracle = fock::oracle_correlation(rec.r, rec.alpha, rec.beta, rec.cutoff, options);
      rec.abs_diff = std::abs(rec.oracle - rec.closed_form);
      rec.status = rec.abs_diff <= config.tolerance ? "ok" : "tolerance";
    } catch (const fock::CutoffTooSmall&) {
      rec.oracle = std::nan("");
      rec.abs_diff = std::nan("");
      rec.status = "cutoff-too-small";
    }
  });
  for (const auto& rec : run.records) {
    if (rec.status != "ok") run.all_within_tolerance = false;
  }
  return run;
}

std::vector<BellResult> run_quadruplet_search(const SweepConfig& config) {
  validate(config);
  const auto rs = config.r_grid.points();
  std::vector<BellResult> out(rs.size());
  detail::parallel_for(rs.size(), config.threads, [&](std::size_t i) {
    QuadrupletSearchOptions options;
    options.restarts = config.restarts;
    // One stream per r row so rows are independent of evaluation order.
    options.seed = config.seed + 0x9e3779b97f4a7c15ULL * i;
    options.parallel = false;
    out[i] = optimize_quadruplet(rs[i], options);
  });
  return out;
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[32];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::general);
  return std::string(buffer, end);
}

Table to_table(const std::vector<SweepRecord>& records, bool with_optimum) {
  Table t;
  t.columns = {"r", "J", "B", "violates"};
  if (with_optimum) {
    for (const char* c : {"J_star", "B_star", "J_star_times_e2r"}) t.columns.emplace_back(c);
  }
  for (const auto& rec : records) {
    std::vector<Cell> row{rec.r, rec.J, rec.B, rec.violates};
    if (with_optimum) {
      row.emplace_back(rec.J_star.value_or(std::nan("")));
      row.emplace_back(rec.B_star.value_or(std::nan("")));
      row.emplace_back(rec.J_star_times_e2r.value_or(std::nan("")));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table to_table(const std::vector<OracleRecord>& records) {
  Table t;
  t.columns = {"r",      "alpha_re",    "alpha_im", "beta_re",  "beta_im",
               "cutoff", "closed_form", "oracle",   "abs_diff", "status"};
  for (const auto& rec : records) {
    t.rows.push_back({rec.r, rec.alpha.re(), rec.alpha.im(), rec.beta.re(), rec.beta.im(),
                      static_cast<std::int64_t>(rec.cutoff), rec.closed_form, rec.oracle,
                      rec.abs_diff, rec.status});
  }
  return t;
}

Table to_table(const std::vector<BellResult>& records) {
  Table t;
  t.columns = {"r",        "B",         "violates",  "converged", "alpha1_re", "alpha1_im",
               "alpha2_re", "alpha2_im", "beta1_re", "beta1_im",  "beta2_re",  "beta2_im"};
  for (const auto& res : records) {
    const Quadruplet& q = res.quadruplet;
    t.rows.push_back({res.r.value(), res.B, res.violates_local_bound, res.converged,
                      q.alpha1.re(), q.alpha1.im(), q.alpha2.re(), q.alpha2.im(), q.beta1.re(),
                      q.beta1.im(), q.beta2.re(), q.beta2.im()});
  }
  return t;
}

namespace {

std::string csv_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) return format_double(v);
        else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
        else if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(v);
        else return v;
      },
      cell);
}

Json json_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        // JSON has no NaN; missing values become null.
        if constexpr (std::is_same_v<T, double>) {
          return std::isfinite(v) ? Json(v) : Json(nullptr);
        } else {
          return v;
        }
      },
      cell);
}

Json grid_json(const GridSpec& g) {
  return {{"min", g.min}, {"max", g.max}, {"steps", g.steps}, {"log", g.log_spaced}};
}

Json config_json(const SweepConfig& c) {
  Json j = {{"mode", to_string(c.mode)},
                      {"r", grid_json(c.r_grid)},
                      {"J", grid_json(c.j_grid)},
                      {"format", to_string(c.format)},
                      {"seed", c.seed},
                      {"threshold", c.threshold ? Json(*c.threshold) : Json(nullptr)}};
  if (c.mode == Mode::ValidateOracle) {
    j["tolerance"] = c.tolerance;
    j["samples"] = c.samples;
    j["max_amplitude"] = c.max_amplitude;
    j["cutoff"] = c.cutoff ? Json(*c.cutoff) : Json(nullptr);
  }
  if (c.mode == Mode::QuadrupletSearch) j["restarts"] = c.restarts;
  return j;
}

}  // namespace

void write_table(std::ostream& out, const SweepConfig& config, const Table& table) {
  if (config.format == OutputFormat::Csv) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      out << (i ? "," : "") << table.columns[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
      out << '\n';
    }
    return;
  }
  Json records = Json::array();
  for (const auto& row : table.rows) {
    Json rec = Json::object();
    for (std::size_t i = 0; i < row.size(); ++i) rec[table.columns[i]] = json_cell(row[i]);
    records.push_back(std::move(rec));
  }
  out << Json{{"config", config_json(config)}, {"records", records}}.dump(2) << '\n';
}

}  // namespace nopa::sweep
