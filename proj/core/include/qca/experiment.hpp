#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace qca {

enum class ExperimentKind { Lift, Spectrum, InfoClass, Bell, Ghz };

std::string_view experiment_name(ExperimentKind kind);

/// One experiment per invocation. Fields mirror the config file keys; CLI
/// flags override file values, and unknown config keys are rejected.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Ghz;
  std::optional<std::filesystem::path> rule_file;  // lift / spectrum / infoclass
  std::uint64_t seed = 0;
  std::size_t grid = 256;        // bell: marginal grid and correlation-curve points
  std::uint64_t steps = 32;      // infoclass: entropy profile horizon
  std::uint64_t runs = 10000;    // ghz: number of simulated runs
  std::uint64_t trials = 64;     // lift: ontology-check trials
  std::optional<double> e_max;   // spectrum: also write the truncated sector
  std::array<double, 4> angles{0.0, 0.78539816339744831, 0.39269908169872415,
                               1.1780972450961724};  // a, a', b, b'
  std::size_t mc_samples = 0;    // bell: optional seeded sampling demo
  std::filesystem::path out_dir = "out";
};

/// Parse a config file (JSON). Throws ConfigError naming the offending field,
/// or IoError.
ExperimentConfig load_config(const std::filesystem::path& path);

/// Validate a config file plus any rule file it references, without running
/// anything. Returns one human-readable diagnostic per problem; empty means
/// clean. Never throws on validation problems.
std::vector<std::string> validate_config_file(const std::filesystem::path& path);

/// Validate an in-memory config the same way (range checks, rule file checks).
std::vector<std::string> validate_config(const ExperimentConfig& config);

struct ManifestEntry {
  std::string path;  // relative to the output directory
  std::string sha256;
  std::uint64_t bytes = 0;
};

/// What a run produced: the effective config, tool identity, duration, and
/// every output file with its checksum. Written as manifest.json next to the
/// outputs (the manifest does not list itself).
struct RunManifest {
  std::string tool;
  std::string version;
  std::string experiment;
  std::string config_echo_json;  // the effective config, normalized
  double duration_seconds = 0.0;
  std::vector<ManifestEntry> outputs;
};

/// Execute the configured experiment, write its outputs and manifest.json
/// under config.out_dir, and return the manifest. Identical config and seed
/// produce byte-identical outputs. Module errors are rethrown with the
/// experiment named in the message.
RunManifest run(const ExperimentConfig& config);

/// SHA-256 of a file, lowercase hex. Throws IoError.
std::string sha256_file(const std::filesystem::path& path);

}  // namespace qca
