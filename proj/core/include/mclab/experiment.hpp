#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mclab {

/// Ratio test between consecutive grid points: median(column at point k+1) / median(column at point k)
/// must lie in [min, max].
struct RatioCheck {
  std::string column;
  double min = 0.0;
  double max = 0.0;
};

/// A declarative experiment: one analysis run over a parameter grid, `runs` times per grid point.
///
/// JSON form:
///   {"name": "...", "analysis": "merging|bounds|comparison|metropolis|stability|spectral",
///    "family": "<name>" or ["<name>", ...], "grid": {"N": [16, 32]}, "params": {"a": 1.2},
///    "runs": 50, "seed": 7, "metric": "tv|relsup", "epsilon": 0.25, "n_max": 1000,
///    "mode": "assert|report", "ratio_check": {"column": "time", "min": 1.4, "max": 2.8},
///    "output": {"csv": "path", "json": "path", "plotdata": "path"}}
struct Scenario {
  std::string name;
  std::string analysis;
  std::vector<std::string> families;
  /// Grid axes in declaration order; the cartesian product is enumerated with the last axis fastest.
  std::vector<std::pair<std::string, std::vector<double>>> grid;
  std::map<std::string, double> params;
  std::size_t runs = 1;
  std::uint64_t seed = 0;
  std::string metric = "tv";
  double epsilon = 0.25;
  std::int64_t n_max = 1000;
  /// Report mode never produces violations (open problems).
  bool report_only = false;
  std::optional<RatioCheck> ratio_check;
  std::map<std::string, std::string> outputs;
  /// Exact configuration bytes; the scenario hash is computed over them.
  std::string source;
};

/// Validates the document; errors are ConfigError with the offending field.
Scenario parse_scenario(const std::string& text);
/// Names of the built-in scenarios.
std::vector<std::string> builtin_scenarios();
/// JSON text of a built-in scenario. Throws ConfigError for an unknown name.
std::string builtin_scenario_text(const std::string& name);

struct RunOptions {
  unsigned threads = 1;
  std::size_t budget_nodes = std::size_t{1} << 20;
  /// Replaces the scenario seed when set.
  std::optional<std::uint64_t> seed;
};

struct ResultSet {
  std::string scenario;
  /// SHA-256 of the configuration bytes, hex.
  std::string hash;
  std::string version;
  std::vector<std::string> columns;
  /// One row per (grid point, run), ordered by grid index then run.
  std::vector<std::vector<double>> rows;
  std::map<std::string, double> summary;
  /// Each asserted invariant that failed, itemized.
  std::vector<std::string> violations;
  /// Labeled (x, y) series for plotting.
  std::vector<std::pair<std::string, std::vector<std::pair<double, double>>>> series;

  bool ok() const noexcept { return violations.empty(); }
};

ResultSet run_scenario(const Scenario& scenario, const RunOptions& options = {});
/// Reads `path`, or a built-in name when no such file exists.
ResultSet run_scenario(const std::string& path_or_builtin, const RunOptions& options = {});

enum class EmitFormat { csv, json, plotdata };

EmitFormat parse_emit_format(const std::string& name);
/// csv: a "# mclab ..." comment line (with a timestamp), the header, then the rows.
/// json: the whole result set. plotdata: (x, y) blocks separated by blank lines, one per series.
std::string render(const ResultSet& result, EmitFormat format);
void emit(const ResultSet& result, EmitFormat format, const std::filesystem::path& path);
/// Inverse of render(result, json).
ResultSet parse_result_json(const std::string& text);

/// Lowercase hex SHA-256 of `bytes`.
std::string sha256_hex(const std::string& bytes);

const char* version() noexcept;

}  // namespace mclab
