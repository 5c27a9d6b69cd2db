#include "qca/experiment.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <utility>

#include <json.hpp>
#include <openssl/evp.h>

#include "qca/automaton.hpp"
#include "qca/bell.hpp"
#include "qca/errors.hpp"
#include "qca/ghz.hpp"
#include "qca/hilbert.hpp"
#include "qca/info_classes.hpp"
#include "qca/rule_io.hpp"
#include "qca/tolerances.hpp"
#include "qca/version.hpp"

namespace qca {

namespace {

using nlohmann::json;

/// Floats in text/CSV outputs carry 16 significant digits.
std::string g16(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.16g", value);
  return buffer;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot write " + path.string());
  }
  out << content;
  if (!out) {
    throw IoError("failed while writing " + path.string());
  }
}

ExperimentKind kind_from_name(const std::string& name) {
  if (name == "lift") return ExperimentKind::Lift;
  if (name == "spectrum") return ExperimentKind::Spectrum;
  if (name == "infoclass") return ExperimentKind::InfoClass;
  if (name == "bell") return ExperimentKind::Bell;
  if (name == "ghz") return ExperimentKind::Ghz;
  throw ConfigError("config: experiment: \"" + name +
                    "\" is not one of lift, spectrum, infoclass, bell, ghz");
}

std::uint64_t require_uint(const json& doc, const std::string& key) {
  const json& value = doc.at(key);
  if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
    throw ConfigError("config: " + key + ": expected a non-negative integer");
  }
  return value.get<std::uint64_t>();
}

json config_echo(const ExperimentConfig& config) {
  json echo;
  echo["experiment"] = std::string(experiment_name(config.kind));
  if (config.rule_file) {
    echo["rule_file"] = config.rule_file->string();
  }
  echo["seed"] = config.seed;
  echo["grid"] = config.grid;
  echo["steps"] = config.steps;
  echo["runs"] = config.runs;
  echo["trials"] = config.trials;
  if (config.e_max) {
    echo["e_max"] = *config.e_max;
  }
  echo["angles"] = config.angles;
  echo["mc_samples"] = config.mc_samples;
  echo["out_dir"] = config.out_dir.string();
  return echo;
}

std::string settings_string(const std::array<Setting, 3>& settings) {
  std::string out;
  for (Setting s : settings) {
    out += s == Setting::X ? 'X' : 'Y';
  }
  return out;
}

std::string outcomes_string(const std::array<int, 3>& outcomes) {
  std::string out;
  for (int o : outcomes) {
    out += o > 0 ? '+' : '-';
  }
  return out;
}

// ---- experiment bodies -----------------------------------------------------

/// Collects output files as they are written and checksums them at the end.
class OutputSet {
 public:
  explicit OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
  }

  void write(const std::string& name, const std::string& content) {
    write_text_file(dir_ / name, content);
    names_.push_back(name);
  }

  std::vector<ManifestEntry> manifest_entries() const {
    std::vector<ManifestEntry> entries;
    entries.reserve(names_.size());
    for (const std::string& name : names_) {
      ManifestEntry entry;
      entry.path = name;
      entry.sha256 = sha256_file(dir_ / name);
      entry.bytes = std::filesystem::file_size(dir_ / name);
      entries.push_back(std::move(entry));
    }
    return entries;
  }

  const std::filesystem::path& dir() const noexcept { return dir_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::string> names_;
};

UpdateRule load_required_rule(const ExperimentConfig& config) {
  if (!config.rule_file) {
    throw ConfigError("config: rule_file: required for experiment " +
                      std::string(experiment_name(config.kind)));
  }
  return load_rule_file(*config.rule_file);
}

void run_lift(const ExperimentConfig& config, OutputSet& outputs) {
  const UpdateRule rule = load_required_rule(config);
  const PermutationUnitary unitary = lift_to_unitary(rule);

  json doc;
  doc["dimension"] = unitary.dimension();
  doc["target"] = json::array();
  for (State t : unitary.target()) {
    doc["target"].push_back(t);
  }
  doc["phases_re"] = json::array();
  doc["phases_im"] = json::array();
  for (const Complex& phase : unitary.phases()) {
    doc["phases_re"].push_back(phase.real());
    doc["phases_im"].push_back(phase.imag());
  }
  outputs.write("unitary.json", doc.dump(2) + "\n");

  const OntologyReport report =
      check_ontology_conservation(unitary, config.trials, config.seed);
  std::ostringstream text;
  text << "# qcasim ontology conservation report v1\n";
  text << "dimension " << unitary.dimension() << "\n";
  text << "trials " << report.trials << "\n";
  text << "seed " << report.seed << "\n";
  text << "basis_maps_to_basis " << (report.max_basis_deviation <= kAlgebraicTol ? "pass" : "fail")
       << "\n";
  text << "max_basis_deviation " << g16(report.max_basis_deviation) << "\n";
  text << "superposition_stays_superposed "
       << (report.min_superposition_distance > kBasisProximityTol ? "pass" : "fail") << "\n";
  text << "min_superposition_distance " << g16(report.min_superposition_distance)
       << "\n";
  text << "result " << (report.passed ? "pass" : "fail") << "\n";
  for (const std::string& failure : report.failures) {
    text << "witness " << failure << "\n";
  }
  outputs.write("ontology_report.txt", text.str());
}

void run_spectrum(const ExperimentConfig& config, OutputSet& outputs) {
  const UpdateRule rule = load_required_rule(config);
  const PermutationUnitary unitary = lift_to_unitary(rule);
  const HamiltonianSpectrum spectrum = extract_hamiltonian(unitary);
  const CycleDecomposition cycles = cycle_decomposition(rule);

  std::ostringstream text;
  text << "# qcasim spectrum v1\n";
  text << "dimension " << spectrum.dimension() << "\n";
  text << "cycles " << cycles.cycles.size() << "\n";
  for (std::size_t c = 0; c < cycles.cycles.size(); ++c) {
    text << "cycle " << c << " length " << cycles.cycles[c].size() << " min_state "
         << cycles.cycles[c].front() << "\n";
  }
  text << "eigenpairs " << spectrum.dimension() << "\n";
  text << "# index eigenphase cycle\n";
  for (std::size_t k = 0; k < spectrum.dimension(); ++k) {
    text << k << " " << g16(spectrum.eigenphases[k]) << " " << spectrum.cycle_origin[k]
         << "\n";
  }
  outputs.write("spectrum.txt", text.str());

  std::ostringstream csv;
  for (std::size_t k = 0; k < spectrum.dimension(); ++k) {
    for (Eigen::Index row = 0; row < spectrum.eigenvectors.rows(); ++row) {
      const Complex amplitude = spectrum.eigenvectors(row, static_cast<Eigen::Index>(k));
      if (row > 0) {
        csv << ",";
      }
      csv << g16(amplitude.real()) << "," << g16(amplitude.imag());
    }
    csv << "\n";
  }
  outputs.write("eigenvectors.csv", csv.str());

  if (config.e_max) {
    const TruncatedSpectrum truncated = truncate_spectrum(spectrum, *config.e_max);
    std::ostringstream trunc;
    trunc << "# qcasim truncated spectrum v1\n";
    trunc << "e_max " << g16(*config.e_max) << "\n";
    trunc << "retained " << truncated.dimension() << "\n";
    trunc << "# index eigenphase cycle\n";
    for (std::size_t k = 0; k < truncated.dimension(); ++k) {
      trunc << k << " " << g16(truncated.eigenphases[k]) << " "
            << truncated.cycle_origin[k] << "\n";
    }
    outputs.write("truncated.txt", trunc.str());
  }
}

void run_infoclass(const ExperimentConfig& config, OutputSet& outputs) {
  const UpdateRule rule = load_required_rule(config);
  const InfoClassPartition partition = compute_info_classes(rule);
  const QuotientRule quotient = quotient_dynamics(rule, partition);

  std::ostringstream text;
  text << "# qcasim information classes v1\n";
  text << "states " << rule.size() << "\n";
  text << "classes " << partition.class_count() << "\n";
  text << "merge_time_bound " << partition.merge_time_bound << "\n";
  std::vector<std::vector<State>> members(partition.class_count());
  for (State s = 0; s < rule.size(); ++s) {
    members[partition.class_of[s]].push_back(s);
  }
  for (std::size_t c = 0; c < members.size(); ++c) {
    text << "class " << c << ":";
    for (State member : members[c]) {
      text << " " << member;
    }
    text << "\n";
  }
  outputs.write("partition.txt", text.str());

  outputs.write("quotient_rule.json", rule_to_text(quotient.rule()));

  const std::vector<double> profile = entropy_profile(rule, config.steps);
  std::ostringstream csv;
  csv << "t,bits\n";
  for (std::size_t t = 0; t < profile.size(); ++t) {
    csv << t << "," << g16(profile[t]) << "\n";
  }
  outputs.write("entropy.csv", csv.str());
}

void run_bell(const ExperimentConfig& config, OutputSet& outputs) {
  if (config.grid < 8) {
    throw ConfigError("config: grid: must be at least 8 for the bell experiment");
  }
  const HiddenVariableDensity density;
  const double flat_lambda = marginal_flatness(MarginalVariable::Lambda, config.grid);
  const double flat_a = marginal_flatness(MarginalVariable::A, config.grid);
  const double flat_b = marginal_flatness(MarginalVariable::B, config.grid);

  const TwoPhotonState pair = TwoPhotonState::bell_pair();
  const CorrelationFn quantum = [&pair](double a, double b) {
    return quantum_correlation(pair, a, b);
  };
  const auto& angles = config.angles;
  const double chsh_quantum =
      chsh_value(quantum, angles[0], angles[1], angles[2], angles[3]);

  std::ostringstream report;
  report << "# qcasim bell report v1\n";
  report << "normalization_C " << g16(density.normalization()) << "\n";
  report << "marginal_flatness_lambda " << g16(flat_lambda) << "\n";
  report << "marginal_flatness_a " << g16(flat_a) << "\n";
  report << "marginal_flatness_b " << g16(flat_b) << "\n";
  report << "chsh_angles " << g16(angles[0]) << " " << g16(angles[1]) << " "
         << g16(angles[2]) << " " << g16(angles[3]) << "\n";
  report << "chsh_quantum " << g16(chsh_quantum) << "\n";
  report << "chsh_deterministic_local_bound 2\n";
  outputs.write("bell_report.txt", report.str());

  const OutcomeRule rule = default_outcome_rule();
  std::ostringstream csv;
  csv << "delta,E_quantum,E_hidden_variable\n";
  for (std::size_t k = 0; k <= config.grid; ++k) {
    const double delta =
        std::numbers::pi * static_cast<double>(k) / static_cast<double>(config.grid);
    const double e_quantum = quantum_correlation(pair, delta, 0.0);
    const double e_hidden = hidden_variable_correlation(density, rule, delta, 0.0);
    csv << g16(delta) << "," << g16(e_quantum) << "," << g16(e_hidden) << "\n";
  }
  outputs.write("correlation.csv", csv.str());

  if (config.mc_samples > 0) {
    const std::vector<WSample> samples =
        sample_w(density, config.mc_samples, config.seed);
    std::ostringstream mc;
    mc << "a,b,lambda\n";
    for (const WSample& sample : samples) {
      mc << g16(sample.a) << "," << g16(sample.b) << "," << g16(sample.lambda) << "\n";
    }
    outputs.write("wsamples.csv", mc.str());
  }
}

void run_ghz(const ExperimentConfig& config, OutputSet& outputs) {
  const std::vector<SixBitState> allowed = enumerate_allowed_states();
  std::ostringstream states;
  states << "# qcasim six-bit universe allowed states v1\n";
  states << "# " << allowed.size() << " allowed of 64; "
         << (64 - allowed.size()) << " forbidden\n";
  states << "# settings outcomes\n";
  for (const SixBitState& state : allowed) {
    states << settings_string(state.settings) << " " << outcomes_string(state.outcomes)
           << "\n";
  }
  outputs.write("allowed_states.txt", states.str());

  const RunStatistics stats = simulate_runs(config.runs, config.seed);
  std::ostringstream csv;
  csv << "settings,count,mean_A,mean_B,mean_C,mean_AB,mean_AC,mean_BC,mean_ABC\n";
  const auto emit = [&csv](const std::string& name, const SettingTally& tally) {
    csv << name << "," << tally.count;
    for (double mean : tally.mean_single) {
      csv << "," << g16(mean);
    }
    for (double mean : tally.mean_pair) {
      csv << "," << g16(mean);
    }
    csv << "," << g16(tally.mean_triple) << "\n";
  };
  for (const SettingTally& tally : stats.per_setting) {
    emit(settings_string(tally.settings), tally);
  }
  emit("ALL", stats.overall);
  outputs.write("run_stats.csv", csv.str());

  const ThreeQubitState ghz = ghz_state();
  const std::array<PauliWord, 4> words = {
      PauliWord::parse("XXX"), PauliWord::parse("XYY"), PauliWord::parse("YXY"),
      PauliWord::parse("YYX")};
  const CommutingReport commuting = check_commuting(words);
  const CounterfactualReport counterfactual = counterfactual_contradiction();

  std::ostringstream report;
  report << "# qcasim ghz report v1\n";
  report << "seed " << config.seed << "\n";
  report << "runs " << config.runs << "\n";
  for (const PauliWord& word : words) {
    report << "expectation " << word.str() << " "
           << g16(pauli_word_expectation(ghz, word)) << "\n";
  }
  report << "four_words_commute " << (commuting.all_commute ? "yes" : "no") << "\n";
  report << "counterfactual_satisfying_all_four " << counterfactual.satisfying_all_four
         << "\n";
  report << "counterfactual_with_xxx_relaxed " << counterfactual.satisfying_three_plus
         << "\n";
  report << "counterfactual_xxx_only " << counterfactual.satisfying_xxx_only << "\n";
  report << "allowed_states " << allowed.size() << "\n";
  report << "forbidden_states " << (64 - allowed.size()) << "\n";
  outputs.write("ghz_report.txt", report.str());
}

}  // namespace

std::string_view experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Lift: return "lift";
    case ExperimentKind::Spectrum: return "spectrum";
    case ExperimentKind::InfoClass: return "infoclass";
    case ExperimentKind::Bell: return "bell";
    case ExperimentKind::Ghz: return "ghz";
  }
  return "unknown";
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open config file " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();

  json doc;
  try {
    doc = json::parse(buffer.str());
  } catch (const json::parse_error& err) {
    throw ConfigError("config: " + path.string() + ": " + err.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("config: expected a JSON object");
  }

  static const std::vector<std::string> known = {
      "experiment", "rule_file", "seed",       "grid",    "steps", "runs",
      "trials",     "e_max",     "angles",     "mc_samples", "out_dir"};
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("config: unknown key \"" + key + "\"");
    }
  }

  ExperimentConfig config;
  if (!doc.contains("experiment") || !doc["experiment"].is_string()) {
    throw ConfigError("config: experiment: expected one of lift, spectrum, infoclass, "
                      "bell, ghz");
  }
  config.kind = kind_from_name(doc["experiment"].get<std::string>());
  if (doc.contains("rule_file")) {
    if (!doc["rule_file"].is_string()) {
      throw ConfigError("config: rule_file: expected a path string");
    }
    config.rule_file = std::filesystem::path(doc["rule_file"].get<std::string>());
  }
  if (doc.contains("seed")) config.seed = require_uint(doc, "seed");
  if (doc.contains("grid")) config.grid = require_uint(doc, "grid");
  if (doc.contains("steps")) config.steps = require_uint(doc, "steps");
  if (doc.contains("runs")) config.runs = require_uint(doc, "runs");
  if (doc.contains("trials")) config.trials = require_uint(doc, "trials");
  if (doc.contains("mc_samples")) config.mc_samples = require_uint(doc, "mc_samples");
  if (doc.contains("e_max")) {
    if (!doc["e_max"].is_number()) {
      throw ConfigError("config: e_max: expected a number");
    }
    config.e_max = doc["e_max"].get<double>();
  }
  if (doc.contains("angles")) {
    const json& angles = doc["angles"];
    if (!angles.is_array() || angles.size() != 4) {
      throw ConfigError("config: angles: expected an array of four numbers");
    }
    for (std::size_t i = 0; i < 4; ++i) {
      if (!angles[i].is_number()) {
        throw ConfigError("config: angles[" + std::to_string(i) +
                          "]: expected a number");
      }
      config.angles[i] = angles[i].get<double>();
    }
  }
  if (doc.contains("out_dir")) {
    if (!doc["out_dir"].is_string()) {
      throw ConfigError("config: out_dir: expected a path string");
    }
    config.out_dir = std::filesystem::path(doc["out_dir"].get<std::string>());
  }
  return config;
}

std::vector<std::string> validate_config(const ExperimentConfig& config) {
  std::vector<std::string> diagnostics;
  const bool needs_rule = config.kind == ExperimentKind::Lift ||
                          config.kind == ExperimentKind::Spectrum ||
                          config.kind == ExperimentKind::InfoClass;
  if (needs_rule && !config.rule_file) {
    diagnostics.push_back("rule_file: required for experiment " +
                          std::string(experiment_name(config.kind)));
  }
  if (needs_rule && config.rule_file) {
    try {
      const UpdateRule rule = load_rule_file(*config.rule_file);
      if (config.kind != ExperimentKind::InfoClass && !rule.is_invertible()) {
        diagnostics.push_back(
            "rule_file: the rule is not invertible; use the infoclass experiment "
            "to quotient it first");
      }
      if (config.kind == ExperimentKind::Spectrum && rule.size() > kDenseDimensionCap) {
        diagnostics.push_back("rule_file: size " + std::to_string(rule.size()) +
                              " exceeds the spectral dense cap of " +
                              std::to_string(kDenseDimensionCap));
      }
    } catch (const Error& err) {
      diagnostics.push_back(err.what());
    }
  }
  if (config.kind == ExperimentKind::Bell && config.grid < 8) {
    diagnostics.push_back("grid: must be at least 8 for the bell experiment (got " +
                          std::to_string(config.grid) + ")");
  }
  if (config.kind == ExperimentKind::Ghz && config.runs == 0) {
    diagnostics.push_back("runs: must be at least 1 for the ghz experiment");
  }
  if (config.kind == ExperimentKind::Lift && config.trials == 0) {
    diagnostics.push_back("trials: must be at least 1 for the lift experiment");
  }
  if (config.e_max && !(*config.e_max >= 0.0)) {
    diagnostics.push_back("e_max: must be non-negative");
  }
  for (double angle : config.angles) {
    if (!std::isfinite(angle)) {
      diagnostics.push_back("angles: entries must be finite");
      break;
    }
  }
  return diagnostics;
}

std::vector<std::string> validate_config_file(const std::filesystem::path& path) {
  ExperimentConfig config;
  try {
    config = load_config(path);
  } catch (const Error& err) {
    return {err.what()};
  }
  return validate_config(config);
}

RunManifest run(const ExperimentConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  OutputSet outputs(config.out_dir);

  switch (config.kind) {
    case ExperimentKind::Lift: run_lift(config, outputs); break;
    case ExperimentKind::Spectrum: run_spectrum(config, outputs); break;
    case ExperimentKind::InfoClass: run_infoclass(config, outputs); break;
    case ExperimentKind::Bell: run_bell(config, outputs); break;
    case ExperimentKind::Ghz: run_ghz(config, outputs); break;
  }

  RunManifest manifest;
  manifest.tool = std::string(kToolName);
  manifest.version = std::string(kToolVersion);
  manifest.experiment = std::string(experiment_name(config.kind));
  manifest.config_echo_json = config_echo(config).dump();
  manifest.outputs = outputs.manifest_entries();
  manifest.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  json doc;
  doc["tool"] = manifest.tool;
  doc["version"] = manifest.version;
  doc["experiment"] = manifest.experiment;
  doc["config"] = config_echo(config);
  doc["duration_seconds"] = manifest.duration_seconds;
  doc["outputs"] = json::array();
  for (const ManifestEntry& entry : manifest.outputs) {
    json item;
    item["path"] = entry.path;
    item["sha256"] = entry.sha256;
    item["bytes"] = entry.bytes;
    doc["outputs"].push_back(item);
  }
  write_text_file(outputs.dir() / "manifest.json", doc.dump(2) + "\n");
  return manifest;
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string() + " for checksumming");
  }
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
    EVP_MD_CTX_free(ctx);
    throw IoError("sha256: cannot initialize digest");
  }
  char buffer[1 << 16];
  while (in) {
    in.read(buffer, sizeof buffer);
    const std::streamsize got = in.gcount();
    if (got > 0 && EVP_DigestUpdate(ctx, buffer, static_cast<std::size_t>(got)) != 1) {
      EVP_MD_CTX_free(ctx);
      throw IoError("sha256: digest update failed");
    }
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_DigestFinal_ex(ctx, digest, &length) != 1) {
    EVP_MD_CTX_free(ctx);
    throw IoError("sha256: digest finalization failed");
  }
  EVP_MD_CTX_free(ctx);
  std::string hex;
  hex.reserve(2 * length);
  static const char* digits = "0123456789abcdef";
  for (unsigned int i = 0; i < length; ++i) {
    hex += digits[digest[i] >> 4];
    hex += digits[digest[i] & 0xf];
  }
  return hex;
}

}  // namespace qca
