#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace mlab {

using ParamMap = std::map<std::string, std::string>;

struct ExperimentConfig {
  std::string experiment;
  ParamMap parameters;  // overrides; unknown keys are rejected
  std::string output_dir = ".";
  std::uint64_t seed = 1;
};

struct ExperimentReport {
  std::string experiment;
  ParamMap parameters;  // full effective set after defaults
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;  // cells pre-formatted, 17 significant digits
  std::vector<std::pair<std::string, bool>> checks;
  bool all_pass = true;
  std::uint64_t seed = 0;
  std::string library_version;
  double wall_seconds = 0.0;  // not serialized; reruns must be byte-identical
};

/// Names of the available experiments.
std::vector<std::string> list_experiments();

/// Complete default parameter set of one experiment.
ParamMap default_parameters(const std::string& experiment);

/// Runs one experiment: merges defaults, dispatches, and collects rows and
/// pass/fail flags at the pinned acceptance tolerances. Throws UsageError for
/// unknown experiments or parameter keys.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Writes <experiment>.csv and <experiment>.json into output_dir; creates the
/// directory if needed. Byte-identical for identical (config, seed).
void emit_report(const ExperimentReport& report, const std::string& output_dir);

/// Parses a flat key = value config file with one [experiment] section per
/// block and returns the overrides for the requested experiment. Unknown
/// sections or keys raise UsageError.
ParamMap parse_config_file(const std::string& path, const std::string& experiment);

}  // namespace mlab
