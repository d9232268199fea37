// nopa-bell: sweeps of the CHSH combination for the two-mode squeezed vacuum
// measured with displaced parity.
//
// Exit codes: 0 success, 1 I/O failure, 2 configuration error,
// 3 oracle tolerance failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "nopa/sweep.hpp"

namespace {

constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitTolerance = 3;

struct Overrides {
  std::string mode = "surface";
  std::optional<double> r_min, r_max, j_min, j_max, tolerance, max_amplitude;
  std::optional<int> r_steps, j_steps, samples, cutoff;
  std::optional<bool> log_j;
  std::optional<std::string> threshold;
  std::string format = "csv";
  std::string output;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> restarts;
  unsigned threads = 0;
};

nopa::sweep::SweepConfig build_config(const Overrides& o) {
  using namespace nopa::sweep;
  SweepConfig c = SweepConfig::defaults(parse_mode(o.mode));
  c.format = parse_format(o.format);
  if (o.r_min) c.r_grid.min = *o.r_min;
  if (o.r_max) c.r_grid.max = *o.r_max;
  if (o.r_steps) c.r_grid.steps = *o.r_steps;
  if (o.j_min) c.j_grid.min = *o.j_min;
  if (o.j_max) c.j_grid.max = *o.j_max;
  if (o.j_steps) c.j_grid.steps = *o.j_steps;
  if (o.log_j) c.j_grid.log_spaced = *o.log_j;
  if (o.threshold) {
    if (*o.threshold == "none") {
      c.threshold.reset();
    } else {
      try {
        std::size_t used = 0;
        c.threshold = std::stod(*o.threshold, &used);
        if (used != o.threshold->size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw ConfigError("threshold", "expected a number or 'none', got '" + *o.threshold + "'");
      }
    }
  }
  if (o.seed) c.seed = *o.seed;
  if (o.tolerance) c.tolerance = *o.tolerance;
  if (o.restarts) c.restarts = *o.restarts;
  if (o.samples) c.samples = *o.samples;
  if (o.max_amplitude) c.max_amplitude = *o.max_amplitude;
  if (o.cutoff) c.cutoff = *o.cutoff;
  c.threads = o.threads;
  validate(c);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CHSH violation by the two-mode squeezed vacuum under displaced parity"};
  Overrides o;
  app.add_option("--mode", o.mode, "surface | optimum-curve | validate-oracle | quadruplet-search")
      ->capture_default_str();
  app.add_option("--r-min", o.r_min, "Smallest squeezing parameter");
  app.add_option("--r-max", o.r_max, "Largest squeezing parameter");
  app.add_option("--r-steps", o.r_steps, "Number of r grid points");
  app.add_option("--j-min", o.j_min, "Smallest displacement magnitude J");
  app.add_option("--j-max", o.j_max, "Largest displacement magnitude J");
  app.add_option("--j-steps", o.j_steps, "Number of J grid points");
  app.add_flag("--log-j,!--linear-j", o.log_j, "Log-spaced J grid (surface default)");
  app.add_option("--threshold", o.threshold,
                 "Emit only points with B above this value, or 'none' (surface default 2)");
  app.add_option("--format", o.format, "csv | json")->capture_default_str();
  app.add_option("--output", o.output, "Output file (default stdout)");
  app.add_option("--seed", o.seed, "Seed for random starts and samples");
  app.add_option("--tolerance", o.tolerance, "validate-oracle: max |closed form - oracle|");
  app.add_option("--restarts", o.restarts, "quadruplet-search: starts per r");
  app.add_option("--samples", o.samples, "validate-oracle: displacement pairs per r");
  app.add_option("--max-amplitude", o.max_amplitude, "validate-oracle: max |alpha|, |beta|");
  app.add_option("--cutoff", o.cutoff, "validate-oracle: fixed Fock cutoff");
  app.add_option("--threads", o.threads, "Worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  nopa::sweep::SweepConfig config;
  try {
    config = build_config(o);
  } catch (const nopa::sweep::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  std::ofstream file;
  if (!o.output.empty()) {
    file.open(o.output, std::ios::binary);
    if (!file) {
      std::cerr << "cannot open output file '" << o.output << "'\n";
      return kExitIo;
    }
  }
  std::ostream& out = o.output.empty() ? std::cout : file;

  using namespace nopa::sweep;
  bool tolerance_failed = false;
  try {
    switch (config.mode) {
      case Mode::Surface:
        write_table(out, config, to_table(run_surface(config), false));
        break;
      case Mode::OptimumCurve:
        write_table(out, config, to_table(run_optimum_curve(config), true));
        break;
      case Mode::ValidateOracle: {
        const auto run = run_validate_oracle(config);
        write_table(out, config, to_table(run.records));
        tolerance_failed = !run.all_within_tolerance;
        break;
      }
      case Mode::QuadrupletSearch:
        write_table(out, config, to_table(run_quadruplet_search(config)));
        break;
    }
  } catch (const nopa::sweep::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const nopa::InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  out.flush();
  if (!out) {
    std::cerr << "failed writing output\n";
    return kExitIo;
  }
  if (tolerance_failed) {
    std::cerr << "oracle disagreement above tolerance " << config.tolerance << '\n';
    return kExitTolerance;
  }
  return 0;
}
