// qcasim: run one reproducible experiment per invocation and write its
// outputs plus a checksummed manifest. Exit codes: 0 success, 1 validation
// failure, 2 runtime/numerical failure.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qca/errors.hpp"
#include "qca/experiment.hpp"
#include "qca/version.hpp"

namespace {

struct CliOverrides {
  std::optional<std::string> config_path;
  std::optional<std::string> rule_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<std::size_t> grid;
  std::optional<std::uint64_t> steps;
  std::optional<std::uint64_t> runs;
  std::optional<std::uint64_t> trials;
  std::optional<double> e_max;
  std::optional<std::size_t> mc_samples;
};

void add_common_flags(CLI::App* cmd, CliOverrides& overrides) {
  cmd->add_option("--config", overrides.config_path, "Experiment config file (JSON)");
  cmd->add_option("--rule", overrides.rule_path, "Automaton rule file (JSON)");
  cmd->add_option("--seed", overrides.seed, "Random seed (u64)");
  cmd->add_option("--out", overrides.out_dir, "Output directory");
  cmd->add_option("--grid", overrides.grid, "Grid size (bell)");
  cmd->add_option("--steps", overrides.steps, "Entropy profile horizon (infoclass)");
  cmd->add_option("--runs", overrides.runs, "Simulated runs (ghz)");
  cmd->add_option("--trials", overrides.trials, "Ontology-check trials (lift)");
  cmd->add_option("--e-max", overrides.e_max, "Eigenphase cutoff (spectrum)");
  cmd->add_option("--mc-samples", overrides.mc_samples,
                  "Seeded density samples to draw (bell)");
}

qca::ExperimentConfig build_config(qca::ExperimentKind kind, const CliOverrides& o) {
  qca::ExperimentConfig config;
  if (o.config_path) {
    config = qca::load_config(*o.config_path);
    if (config.kind != kind) {
      throw qca::ConfigError(
          "config: experiment \"" + std::string(qca::experiment_name(config.kind)) +
          "\" does not match the \"" + std::string(qca::experiment_name(kind)) +
          "\" subcommand");
    }
  }
  config.kind = kind;
  if (o.rule_path) config.rule_file = *o.rule_path;
  if (o.seed) config.seed = *o.seed;
  if (o.out_dir) config.out_dir = *o.out_dir;
  if (o.grid) config.grid = *o.grid;
  if (o.steps) config.steps = *o.steps;
  if (o.runs) config.runs = *o.runs;
  if (o.trials) config.trials = *o.trials;
  if (o.e_max) config.e_max = *o.e_max;
  if (o.mc_samples) config.mc_samples = *o.mc_samples;
  return config;
}

int run_experiment(qca::ExperimentKind kind, const CliOverrides& overrides) {
  qca::ExperimentConfig config;
  try {
    config = build_config(kind, overrides);
    const auto diagnostics = qca::validate_config(config);
    if (!diagnostics.empty()) {
      for (const std::string& d : diagnostics) {
        std::cerr << "error: " << d << "\n";
      }
      return 1;
    }
  } catch (const qca::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  try {
    const qca::RunManifest manifest = qca::run(config);
    std::cout << manifest.experiment << ": wrote " << manifest.outputs.size()
              << " files to " << config.out_dir.string() << " ("
              << manifest.outputs.size() + 1 << " with manifest.json)\n";
    return 0;
  } catch (const qca::Error& err) {
    std::cerr << "error: experiment " << qca::experiment_name(kind) << ": "
              << err.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qcasim: finite-automaton quantum lift and correlation experiments"};
  app.set_version_flag("--version", std::string(qca::kToolVersion));
  app.require_subcommand(1);

  CliOverrides overrides;
  std::string validate_path;

  CLI::App* lift = app.add_subcommand("lift", "Lift a rule to a permutation unitary");
  CLI::App* spectrum = app.add_subcommand("spectrum", "Extract the evolution spectrum");
  CLI::App* infoclass =
      app.add_subcommand("infoclass", "Information classes and quotient dynamics");
  CLI::App* bell =
      app.add_subcommand("bell", "Hidden-variable density and CHSH experiment");
  CLI::App* ghz = app.add_subcommand("ghz", "Six-bit universe and operator algebra");
  for (CLI::App* cmd : {lift, spectrum, infoclass, bell, ghz}) {
    add_common_flags(cmd, overrides);
  }
  CLI::App* validate =
      app.add_subcommand("validate", "Validate a config (and its rule file)");
  validate->add_option("--config", validate_path, "Experiment config file (JSON)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (validate->parsed()) {
      const auto diagnostics = qca::validate_config_file(validate_path);
      for (const std::string& d : diagnostics) {
        std::cout << d << "\n";
      }
      if (diagnostics.empty()) {
        std::cout << "ok\n";
        return 0;
      }
      return 1;
    }
    if (lift->parsed()) return run_experiment(qca::ExperimentKind::Lift, overrides);
    if (spectrum->parsed())
      return run_experiment(qca::ExperimentKind::Spectrum, overrides);
    if (infoclass->parsed())
      return run_experiment(qca::ExperimentKind::InfoClass, overrides);
    if (bell->parsed()) return run_experiment(qca::ExperimentKind::Bell, overrides);
    if (ghz->parsed()) return run_experiment(qca::ExperimentKind::Ghz, overrides);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 1;
}
