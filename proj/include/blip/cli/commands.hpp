#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "blip/cli/config.hpp"
#include "blip/cli/output.hpp"
#include "blip/observables.hpp"
#include "blip/propagation.hpp"

namespace blip::cli {

enum class Format { csv, json };

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int tolerance_breach = 1;
inline constexpr int config_error = 2;
inline constexpr int runtime_error = 3;
}  // namespace exit_code

struct Options {
  std::optional<std::filesystem::path> config;
  bool strict = false;
  std::optional<std::filesystem::path> out;
  Format format = Format::csv;
};

struct Check {
  std::string name;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Everything `run` reports, before anything is written.
struct RunSummary {
  std::string scenario_tag;
  Direction incidence = Direction::plus;
  double relative_index = 1.0;  // c_left / c_right
  ScatterRates rates;
  CrossingWindow window;
  ObservableReport input;
  ObservableReport final_total;
  std::optional<ObservableReport> transmitted_conditional;
  double final_time = 0.0;
  double prob_t = 0.0;
  double prob_r = 0.0;
  double norm_t = 0.0;
  double norm_r = 0.0;
  double transmitted_peak_k = 0.0;
  double resample_drift = 0.0;
  double guard_residual = 0.0;
  std::vector<Check> checks;

  bool all_pass() const;
};

/// Runs the configured scenario and evaluates the tolerance checks.
struct RunArtifacts {
  RunSummary summary;
  Table timeseries;
  // one table per report time, only when snapshots are requested
  std::vector<Table> snapshots;
};

RunArtifacts execute_run(const RunConfig& cfg);

struct CheckArgs {
  double n_min = 1.0;
  double n_max = 3.0;
  std::size_t steps = 21;
};

struct CheckResult {
  Table table;
  bool all_pass = true;
};

CheckResult execute_check(const CheckArgs& args);

struct DysonArgs {
  double q = 0.5;  // |Omega| / 2c
  std::size_t terms = 12;
};

struct DysonResult {
  Table table;
  bool convergent = true;
  bool within_bounds = true;
};

DysonResult execute_dyson(const DysonArgs& args);

// Front ends: print or write results, map errors onto exit codes.
int run_command(const Options& opts, std::ostream& out, std::ostream& err);
int check_command(const CheckArgs& args, const Options& opts, std::ostream& out, std::ostream& err);
int dyson_command(const DysonArgs& args, const Options& opts, std::ostream& out, std::ostream& err);

}  // namespace blip::cli
