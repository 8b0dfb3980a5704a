// Batch experiment runner. Exit codes: 0 all checks pass, 1 numerical
// failure, 2 usage or configuration error.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "momentum_lab/errors.hpp"
#include "momentum_lab/experiments.hpp"
#include "momentum_lab/version.hpp"

namespace {

int run_command(const std::string& experiment, const std::string& config_file,
                const std::vector<std::string>& sets, const std::string& out_dir,
                std::uint64_t seed) {
  mlab::ExperimentConfig config;
  config.experiment = experiment;
  config.output_dir = out_dir;
  config.seed = seed;

  if (!config_file.empty())
    config.parameters = mlab::parse_config_file(config_file, experiment);
  for (const auto& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw mlab::UsageError("--set expects key=value, got '" + kv + "'");
    config.parameters[kv.substr(0, eq)] = kv.substr(eq + 1);
  }

  const mlab::ExperimentReport report = mlab::run_experiment(config);
  mlab::emit_report(report, config.output_dir);

  for (const auto& [name, pass] : report.checks)
    std::printf("  %-36s %s\n", name.c_str(), pass ? "pass" : "FAIL");
  std::printf("%s: %s in %.2f s (seed %llu), reports in %s\n", experiment.c_str(),
              report.all_pass ? "all checks passed" : "CHECKS FAILED", report.wall_seconds,
              static_cast<unsigned long long>(report.seed), config.output_dir.c_str());
  return report.all_pass ? 0 : 1;
}

void list_command() {
  for (const auto& name : mlab::list_experiments()) {
    std::printf("%s\n", name.c_str());
    for (const auto& [key, value] : mlab::default_parameters(name))
      std::printf("    %-18s = %s\n", key.c_str(), value.c_str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"momentum-space Coulomb operator experiments"};
  app.set_version_flag("--version", std::string(mlab::library_version));
  app.require_subcommand(1);

  std::string experiment, config_file, out_dir = ".";
  std::vector<std::string> sets;
  std::uint64_t seed = 1;

  CLI::App* run = app.add_subcommand("run", "run one experiment and emit CSV/JSON reports");
  run->add_option("experiment", experiment, "experiment name (see 'list')")->required();
  run->add_option("--config", config_file, "flat key = value config file with [experiment] sections");
  run->add_option("--set", sets, "override a parameter, key=value")->take_all();
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--seed", seed, "base random seed");

  CLI::App* list = app.add_subcommand("list", "list experiments and their default parameters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (list->parsed()) {
      list_command();
      return 0;
    }
    return run_command(experiment, config_file, sets, out_dir, seed);
  } catch (const mlab::UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
