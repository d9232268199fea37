#pragma once

// Parameter sweeps behind the command-line tool: the B(r, J) surface, the
// optimum curve, oracle validation runs and general quadruplet searches.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nopa/types.hpp"

namespace nopa::sweep {

/// Bad configuration; `field()` names the offending option.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message);
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  int steps = 1;
  bool log_spaced = false;

  /// `steps` points from min to max inclusive (just min when steps == 1).
  std::vector<double> points() const;
};

enum class Mode { Surface, OptimumCurve, ValidateOracle, QuadrupletSearch };
enum class OutputFormat { Csv, Json };

std::string_view to_string(Mode mode);
std::string_view to_string(OutputFormat format);
Mode parse_mode(std::string_view text);
OutputFormat parse_format(std::string_view text);

/// Largest squeezing accepted by validate-oracle mode.
constexpr double kOracleMaxSqueezing = 3.0;

struct SweepConfig {
  Mode mode = Mode::Surface;
  GridSpec r_grid;
  GridSpec j_grid;
  OutputFormat format = OutputFormat::Csv;
  std::uint64_t seed = 1;
  /// Emit only points with B strictly above this (surface mode).
  std::optional<double> threshold;
  /// validate-oracle: largest accepted |closed form - oracle|.
  double tolerance = 1e-6;
  /// quadruplet-search: number of Nelder-Mead starts per r.
  std::size_t restarts = 8;
  /// validate-oracle: random displacement pairs per r, drawn from the disk
  /// of radius max_amplitude.
  int samples = 20;
  double max_amplitude = 1.5;
  /// validate-oracle: fixed state cutoff instead of the tail-weight policy.
  std::optional<int> cutoff;
  /// Worker threads; 0 means hardware concurrency. Output never depends on it.
  unsigned threads = 0;

  /// Mode-specific defaults (surface: r in [0, 3] x 61, log J in [1e-5, 0.5] x 81,
  /// threshold 2).
  static SweepConfig defaults(Mode mode);
};

/// Throws ConfigError on the first invalid field.
void validate(const SweepConfig& config);

struct SweepRecord {
  double r = 0.0;
  double J = 0.0;
  double B = 0.0;
  bool violates = false;
  std::optional<double> J_star;
  std::optional<double> B_star;
  std::optional<double> J_star_times_e2r;
};

struct OracleRecord {
  double r = 0.0;
  PhasePoint alpha;
  PhasePoint beta;
  int cutoff = 0;
  double closed_form = 0.0;
  double oracle = 0.0;
  double abs_diff = 0.0;
  /// "ok", "tolerance" or "cutoff-too-small".
  std::string status;
};

struct OracleRun {
  std::vector<OracleRecord> records;
  bool all_within_tolerance = true;
};

/// B = chsh_paper_form(r, J) over the grid in row-major (r, J) order,
/// filtered by the threshold when one is set.
std::vector<SweepRecord> run_surface(const SweepConfig& config);

/// (J*, B*) per r from optimal_J.
std::vector<SweepRecord> run_optimum_curve(const SweepConfig& config);

/// Closed form against the Fock-space oracle on seeded random displacements.
OracleRun run_validate_oracle(const SweepConfig& config);

/// Best general quadruplet per r; reproducible for a fixed seed.
std::vector<BellResult> run_quadruplet_search(const SweepConfig& config);

using Cell = std::variant<double, std::int64_t, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

Table to_table(const std::vector<SweepRecord>& records, bool with_optimum);
Table to_table(const std::vector<OracleRecord>& records);
Table to_table(const std::vector<BellResult>& records);

/// Shortest decimal that round-trips to the same double (at most 17
/// significant digits).
std::string format_double(double value);

/// CSV (header row, LF endings) or JSON {"config": ..., "records": [...]}.
void write_table(std::ostream& out, const SweepConfig& config, const Table& table);

}  // namespace nopa::sweep
