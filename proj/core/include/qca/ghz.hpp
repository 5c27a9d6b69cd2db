#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qca/hilbert.hpp"  // Complex

namespace qca {

using Matrix8cd = Eigen::Matrix<Complex, 8, 8>;

// ---------------------------------------------------------------------------
// Three spin-1/2 particles a, b, c. Basis order is lexicographic in (a, b, c)
// with + before -, i.e. index bit 2 is particle a, bit 1 is b, bit 0 is c,
// and bit value 0 means +. This fixes the sign convention of sigma_y
// (sigma_y |+> = +i |->, sigma_y |-> = -i |+>) and with it the signs of the
// operator-product identities below.
// ---------------------------------------------------------------------------

/// Normalized three-particle spin state (8 complex amplitudes).
class ThreeQubitState {
 public:
  /// Throws NormalizationError unless normalized within kNormTol.
  explicit ThreeQubitState(std::array<Complex, 8> amplitudes);

  const std::array<Complex, 8>& amplitudes() const noexcept { return amplitudes_; }

 private:
  std::array<Complex, 8> amplitudes_;
};

/// (|+,+,+> - |-,-,->) / sqrt(2).
ThreeQubitState ghz_state();

enum class Pauli : std::uint8_t { I, X, Y };

/// One single-particle letter per particle. The three-letter observables of
/// interest use only X and Y; the identity letter exists so single- and
/// two-particle expectations can be phrased as padded words.
struct PauliWord {
  std::array<Pauli, 3> letters{Pauli::I, Pauli::I, Pauli::I};

  /// Parse "XYY", "XII", ... Throws InputError on anything else.
  static PauliWord parse(std::string_view text);
  std::string str() const;
};

/// <state| word |state>, computed by applying the single-particle actions
/// (X flips the spin; Y flips it with a factor +-i) and taking the inner
/// product. Real because the words are Hermitian.
double pauli_word_expectation(const ThreeQubitState& state, const PauliWord& word);

/// Dense 8x8 matrix of a word.
Matrix8cd pauli_word_matrix(const PauliWord& word);

/// Result of the pairwise commutator check over a set of words.
struct CommutingReport {
  bool all_commute = false;
  double max_commutator_entry = 0.0;  // largest |[A,B]| entry seen
  /// First offending pair, when any commutator exceeds kAlgebraicTol.
  std::optional<std::pair<PauliWord, PauliWord>> witness;
};

CommutingReport check_commuting(std::span<const PauliWord> words);

/// Exhaustive check that no assignment of +-1 values to the six observables
/// (Xa, Ya, Xb, Yb, Xc, Yc) satisfies all four product identities
/// XXX = -1, XYY = YXY = YYX = +1 at once, plus the counts for two relaxed
/// constraint sets and the algebraic cause of the clash.
struct CounterfactualReport {
  int assignments_total = 64;
  int satisfying_all_four = -1;    // 0: the identities admit no joint values
  int satisfying_three_plus = -1;  // XXX constraint dropped
  int satisfying_xxx_only = -1;    // only XXX = -1 imposed
  std::string forced_product_note;
};

CounterfactualReport counterfactual_contradiction();

// ---------------------------------------------------------------------------
// The six-bit universe: one X/Y setting bit and one +-1 outcome bit per
// observer. Legality is a predicate coupling the two triples, not a dynamics.
// ---------------------------------------------------------------------------

enum class Setting : std::uint8_t { X, Y };

struct SixBitState {
  std::array<Setting, 3> settings{Setting::X, Setting::X, Setting::X};
  std::array<int, 3> outcomes{+1, +1, +1};
};

/// The allowed-state predicate: setting triples with an even number of Y's
/// constrain the outcome product (-1 for XXX, +1 for the two-Y triples);
/// odd-Y triples are unconstrained. Exactly 48 of the 64 states pass.
class SixBitLaw {
 public:
  /// -1 or +1 for constrained setting triples, 0 for unconstrained ones.
  static int required_product(const std::array<Setting, 3>& settings);

  bool allowed(const SixBitState& state) const;
};

/// The 48 lawful states in canonical order: settings lexicographic (X < Y),
/// outcomes lexicographic (+1 < -1) within each setting triple.
std::vector<SixBitState> enumerate_allowed_states();

/// Per-setting-triple tallies of a simulated run series.
struct SettingTally {
  std::array<Setting, 3> settings{Setting::X, Setting::X, Setting::X};
  std::uint64_t count = 0;
  std::array<double, 3> mean_single{};  // mean A, mean B, mean C
  std::array<double, 3> mean_pair{};    // mean AB, mean AC, mean BC
  double mean_triple = 0.0;             // mean ABC
};

struct RunStatistics {
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  std::array<SettingTally, 8> per_setting{};  // settings in canonical order
  SettingTally overall{};                     // unconditional tallies
};

/// Sample n states uniformly from the 48 allowed states and tally outcome
/// means per observer, per pair, and per setting triple. Deterministic for a
/// fixed seed. Throws InputError when n is zero.
RunStatistics simulate_runs(std::uint64_t n, std::uint64_t seed);

}  // namespace qca
