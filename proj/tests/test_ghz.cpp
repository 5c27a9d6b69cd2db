#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <set>
#include <vector>

#include "qca/errors.hpp"
#include "qca/ghz.hpp"
#include "qca/tolerances.hpp"

using namespace qca;

namespace {

const PauliWord kXXX = PauliWord::parse("XXX");
const PauliWord kXYY = PauliWord::parse("XYY");
const PauliWord kYXY = PauliWord::parse("YXY");
const PauliWord kYYX = PauliWord::parse("YYX");

int outcome_product(const SixBitState& state) {
  return state.outcomes[0] * state.outcomes[1] * state.outcomes[2];
}

/// All 64 six-bit states in the same canonical order as the enumeration.
std::vector<SixBitState> all_sixbit_states() {
  std::vector<SixBitState> states;
  for (int setting_bits = 0; setting_bits < 8; ++setting_bits) {
    for (int outcome_bits = 0; outcome_bits < 8; ++outcome_bits) {
      SixBitState state;
      for (int observer = 0; observer < 3; ++observer) {
        const int bit = 2 - observer;
        state.settings[static_cast<std::size_t>(observer)] =
            (setting_bits >> bit) & 1 ? Setting::Y : Setting::X;
        state.outcomes[static_cast<std::size_t>(observer)] =
            (outcome_bits >> bit) & 1 ? -1 : +1;
      }
      states.push_back(state);
    }
  }
  return states;
}

std::string key_of(const SixBitState& state) {
  std::string key;
  for (Setting s : state.settings) {
    key += s == Setting::X ? 'X' : 'Y';
  }
  for (int o : state.outcomes) {
    key += o > 0 ? '+' : '-';
  }
  return key;
}

}  // namespace

TEST_CASE("the entangled three-particle state") {
  const ThreeQubitState ghz = ghz_state();
  double norm_sq = 0.0;
  for (const Complex& amplitude : ghz.amplitudes()) {
    norm_sq += std::norm(amplitude);
  }
  CHECK(std::abs(norm_sq - 1.0) <= kNormTol);
  CHECK(ghz.amplitudes()[2] == Complex(0.0, 0.0));  // |+,-,+>
  // Relative phase between |+,+,+> and |-,-,-> is -1.
  const Complex ratio = ghz.amplitudes()[7] / ghz.amplitudes()[0];
  CHECK(std::abs(ratio - Complex(-1.0, 0.0)) <= 1e-15);
}

TEST_CASE("three-qubit states must be normalized") {
  std::array<Complex, 8> bad{};
  bad[0] = Complex(1.0, 0.0);
  bad[1] = Complex(1.0, 0.0);
  CHECK_THROWS_AS(ThreeQubitState{bad}, NormalizationError);
}

TEST_CASE("word parsing") {
  CHECK(PauliWord::parse("XYY").str() == "XYY");
  CHECK(PauliWord::parse("XII").str() == "XII");
  CHECK_THROWS_AS(PauliWord::parse("XY"), InputError);
  CHECK_THROWS_AS(PauliWord::parse("XYZ"), InputError);
}

TEST_CASE("operator products on the entangled state") {
  const ThreeQubitState ghz = ghz_state();
  CHECK(std::abs(pauli_word_expectation(ghz, kXXX) - (-1.0)) <= kAlgebraicTol);
  CHECK(std::abs(pauli_word_expectation(ghz, kXYY) - 1.0) <= kAlgebraicTol);
  CHECK(std::abs(pauli_word_expectation(ghz, kYXY) - 1.0) <= kAlgebraicTol);
  CHECK(std::abs(pauli_word_expectation(ghz, kYYX) - 1.0) <= kAlgebraicTol);
}

TEST_CASE("single-particle expectations vanish on the entangled state") {
  const ThreeQubitState ghz = ghz_state();
  for (const char* word : {"XII", "IXI", "IIX", "YII", "IYI", "IIY"}) {
    CHECK(std::abs(pauli_word_expectation(ghz, PauliWord::parse(word))) <=
          kAlgebraicTol);
  }
}

TEST_CASE("the state is a joint eigenvector of the four words") {
  const ThreeQubitState ghz = ghz_state();
  Eigen::Matrix<Complex, 8, 1> psi;
  for (int i = 0; i < 8; ++i) {
    psi[i] = ghz.amplitudes()[static_cast<std::size_t>(i)];
  }
  const std::array<std::pair<PauliWord, double>, 4> pairs = {
      std::make_pair(kXXX, -1.0), std::make_pair(kXYY, 1.0),
      std::make_pair(kYXY, 1.0), std::make_pair(kYYX, 1.0)};
  for (const auto& [word, eigenvalue] : pairs) {
    const Eigen::Matrix<Complex, 8, 1> residual =
        pauli_word_matrix(word) * psi - eigenvalue * psi;
    CHECK(residual.cwiseAbs().maxCoeff() <= kAlgebraicTol);
  }
}

TEST_CASE("commutation structure of three-letter words") {
  SUBCASE("the four product words commute pairwise") {
    const std::array<PauliWord, 4> words = {kXXX, kXYY, kYXY, kYYX};
    const CommutingReport report = check_commuting(words);
    CHECK(report.all_commute);
    CHECK(report.max_commutator_entry <= kAlgebraicTol);
    CHECK_FALSE(report.witness.has_value());
  }
  SUBCASE("words differing on one particle anticommute, with a witness") {
    const std::array<PauliWord, 2> words = {kXXX, PauliWord::parse("YXX")};
    const CommutingReport report = check_commuting(words);
    CHECK_FALSE(report.all_commute);
    REQUIRE(report.witness.has_value());
    CHECK(report.witness->first.str() == "XXX");
    CHECK(report.witness->second.str() == "YXX");
  }
  SUBCASE("a single word trivially commutes") {
    const std::array<PauliWord, 1> words = {kXXX};
    CHECK(check_commuting(words).all_commute);
  }
  SUBCASE("exhaustive parity rule over all X/Y word pairs") {
    // Same-particle X and Y anticommute, different particles commute, so two
    // words commute iff they differ in an even number of positions.
    std::vector<PauliWord> words;
    for (int code = 0; code < 8; ++code) {
      PauliWord word;
      for (int particle = 0; particle < 3; ++particle) {
        word.letters[static_cast<std::size_t>(particle)] =
            (code >> (2 - particle)) & 1 ? Pauli::Y : Pauli::X;
      }
      words.push_back(word);
    }
    for (const PauliWord& lhs : words) {
      for (const PauliWord& rhs : words) {
        int differing = 0;
        for (std::size_t particle = 0; particle < 3; ++particle) {
          differing += lhs.letters[particle] != rhs.letters[particle];
        }
        const Matrix8cd commutator = pauli_word_matrix(lhs) * pauli_word_matrix(rhs) -
                                     pauli_word_matrix(rhs) * pauli_word_matrix(lhs);
        const Matrix8cd anticommutator =
            pauli_word_matrix(lhs) * pauli_word_matrix(rhs) +
            pauli_word_matrix(rhs) * pauli_word_matrix(lhs);
        if (differing % 2 == 0) {
          CHECK(commutator.cwiseAbs().maxCoeff() <= kAlgebraicTol);
        } else {
          CHECK(anticommutator.cwiseAbs().maxCoeff() <= kAlgebraicTol);
        }
      }
    }
  }
}

TEST_CASE("no joint +-1 assignment satisfies the four identities") {
  const CounterfactualReport report = counterfactual_contradiction();
  CHECK(report.assignments_total == 64);
  CHECK(report.satisfying_all_four == 0);
  CHECK(report.satisfying_xxx_only == 32);
  // Dropping the XXX constraint leaves the three independent +1 identities,
  // i.e. 2^(6-3) assignments.
  CHECK(report.satisfying_three_plus == 8);
  CHECK_FALSE(report.forced_product_note.empty());

  // Independent recount.
  int all_four = 0, three = 0, xxx_only = 0;
  for (int bits = 0; bits < 64; ++bits) {
    const auto v = [bits](int slot) { return (bits >> slot) & 1 ? -1 : +1; };
    const bool xxx = v(0) * v(2) * v(4) == -1;
    const bool xyy = v(0) * v(3) * v(5) == +1;
    const bool yxy = v(1) * v(2) * v(5) == +1;
    const bool yyx = v(1) * v(3) * v(4) == +1;
    all_four += xxx && xyy && yxy && yyx;
    three += xyy && yxy && yyx;
    xxx_only += xxx;
  }
  CHECK(all_four == report.satisfying_all_four);
  CHECK(three == report.satisfying_three_plus);
  CHECK(xxx_only == report.satisfying_xxx_only);
}

TEST_CASE("the allowed-state law") {
  SUBCASE("required products per setting triple") {
    CHECK(SixBitLaw::required_product({Setting::X, Setting::X, Setting::X}) == -1);
    CHECK(SixBitLaw::required_product({Setting::X, Setting::Y, Setting::Y}) == +1);
    CHECK(SixBitLaw::required_product({Setting::Y, Setting::X, Setting::Y}) == +1);
    CHECK(SixBitLaw::required_product({Setting::Y, Setting::Y, Setting::X}) == +1);
    CHECK(SixBitLaw::required_product({Setting::X, Setting::X, Setting::Y}) == 0);
    CHECK(SixBitLaw::required_product({Setting::Y, Setting::Y, Setting::Y}) == 0);
  }
  SUBCASE("48 allowed states, 16 forbidden") {
    const std::vector<SixBitState> allowed = enumerate_allowed_states();
    CHECK(allowed.size() == 48);

    // Exact complement of the product-identity violators, over all 64.
    const SixBitLaw law;
    std::set<std::string> allowed_keys;
    for (const SixBitState& state : allowed) {
      CHECK(law.allowed(state));
      allowed_keys.insert(key_of(state));
    }
    CHECK(allowed_keys.size() == 48);
    int forbidden = 0;
    for (const SixBitState& state : all_sixbit_states()) {
      const int required = SixBitLaw::required_product(state.settings);
      const bool violates = required != 0 && outcome_product(state) != required;
      CHECK(law.allowed(state) == !violates);
      CHECK(allowed_keys.count(key_of(state)) == (violates ? 0u : 1u));
      forbidden += violates;
    }
    CHECK(forbidden == 16);
  }
  SUBCASE("all-plus outcomes under XXX settings are forbidden") {
    SixBitState state;
    state.settings = {Setting::X, Setting::X, Setting::X};
    state.outcomes = {+1, +1, +1};
    CHECK_FALSE(SixBitLaw().allowed(state));
  }
  SUBCASE("odd-Y setting triples allow all eight outcomes") {
    int count = 0;
    for (const SixBitState& state : all_sixbit_states()) {
      if (state.settings == std::array<Setting, 3>{Setting::X, Setting::X, Setting::Y}) {
        CHECK(SixBitLaw().allowed(state));
        ++count;
      }
    }
    CHECK(count == 8);
  }
}

TEST_CASE("constrained triples are exactly balanced") {
  // For every even-Y setting triple: exactly 4 outcomes, and within them every
  // single outcome and every pairwise product sums to exactly zero.
  const std::vector<SixBitState> allowed = enumerate_allowed_states();
  for (int setting_bits = 0; setting_bits < 8; ++setting_bits) {
    std::array<Setting, 3> settings;
    for (int observer = 0; observer < 3; ++observer) {
      settings[static_cast<std::size_t>(observer)] =
          (setting_bits >> (2 - observer)) & 1 ? Setting::Y : Setting::X;
    }
    const int required = SixBitLaw::required_product(settings);
    if (required == 0) {
      continue;
    }
    int count = 0;
    int singles[3] = {0, 0, 0};
    int pairs[3] = {0, 0, 0};
    for (const SixBitState& state : allowed) {
      if (state.settings != settings) {
        continue;
      }
      ++count;
      CHECK(outcome_product(state) == required);
      for (int i = 0; i < 3; ++i) {
        singles[i] += state.outcomes[static_cast<std::size_t>(i)];
      }
      pairs[0] += state.outcomes[0] * state.outcomes[1];
      pairs[1] += state.outcomes[0] * state.outcomes[2];
      pairs[2] += state.outcomes[1] * state.outcomes[2];
    }
    CHECK(count == 4);
    for (int i = 0; i < 3; ++i) {
      CHECK(singles[i] == 0);
      CHECK(pairs[i] == 0);
    }
  }
}

TEST_CASE("simulated runs obey the law exactly and are seed-deterministic") {
  const RunStatistics stats = simulate_runs(5000, 12345);
  CHECK(stats.n == 5000);
  CHECK(stats.seed == 12345);

  std::uint64_t total = 0;
  for (const SettingTally& tally : stats.per_setting) {
    total += tally.count;
    const int required = SixBitLaw::required_product(tally.settings);
    if (required != 0 && tally.count > 0) {
      // Conditional three-point products hold with certainty, not on average.
      CHECK(tally.mean_triple == static_cast<double>(required));
    }
  }
  CHECK(total == 5000);
  CHECK(stats.overall.count == 5000);

  const RunStatistics again = simulate_runs(5000, 12345);
  for (std::size_t s = 0; s < 8; ++s) {
    CHECK(again.per_setting[s].count == stats.per_setting[s].count);
    CHECK(again.per_setting[s].mean_triple == stats.per_setting[s].mean_triple);
  }

  CHECK_THROWS_AS(simulate_runs(0, 1), InputError);
}

TEST_CASE("unconditional singles and pairs vanish statistically") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    for (std::uint64_t n : {100ULL, 1000ULL, 10000ULL}) {
      const RunStatistics stats = simulate_runs(n, seed);
      const double bound = 4.0 / std::sqrt(static_cast<double>(n));
      for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(stats.overall.mean_single[static_cast<std::size_t>(i)]) <= bound);
        CHECK(std::abs(stats.overall.mean_pair[static_cast<std::size_t>(i)]) <= bound);
      }
    }
  }
}
