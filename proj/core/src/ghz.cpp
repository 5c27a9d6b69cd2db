#include "qca/ghz.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "qca/errors.hpp"
#include "qca/random.hpp"
#include "qca/tolerances.hpp"

namespace qca {

namespace {

// Basis index layout: bit 2 = particle a, bit 1 = b, bit 0 = c; bit 0 means +.

/// word |in>, using the single-particle actions: X flips the addressed spin,
/// Y flips it with a factor +i on a + source and -i on a - source.
std::array<Complex, 8> apply_word(const PauliWord& word,
                                  const std::array<Complex, 8>& in) {
  int flip_mask = 0;
  for (int particle = 0; particle < 3; ++particle) {
    if (word.letters[static_cast<std::size_t>(particle)] != Pauli::I) {
      flip_mask |= 1 << (2 - particle);
    }
  }
  std::array<Complex, 8> out{};
  for (int index = 0; index < 8; ++index) {
    Complex factor(1.0, 0.0);
    for (int particle = 0; particle < 3; ++particle) {
      if (word.letters[static_cast<std::size_t>(particle)] == Pauli::Y) {
        const bool is_minus = (index >> (2 - particle)) & 1;
        factor *= is_minus ? Complex(0.0, -1.0) : Complex(0.0, 1.0);
      }
    }
    out[static_cast<std::size_t>(index ^ flip_mask)] +=
        factor * in[static_cast<std::size_t>(index)];
  }
  return out;
}

}  // namespace

ThreeQubitState::ThreeQubitState(std::array<Complex, 8> amplitudes)
    : amplitudes_(amplitudes) {
  double norm_sq = 0.0;
  for (const Complex& amplitude : amplitudes_) {
    norm_sq += std::norm(amplitude);
  }
  if (std::abs(norm_sq - 1.0) > kNormTol) {
    throw NormalizationError("ThreeQubitState: squared amplitudes sum to " +
                             std::to_string(norm_sq) + ", not 1");
  }
}

ThreeQubitState ghz_state() {
  std::array<Complex, 8> amplitudes{};
  const double r = 1.0 / std::sqrt(2.0);
  amplitudes[0] = Complex(r, 0.0);    // |+,+,+>
  amplitudes[7] = Complex(-r, 0.0);   // -|-,-,->
  return ThreeQubitState(amplitudes);
}

PauliWord PauliWord::parse(std::string_view text) {
  if (text.size() != 3) {
    throw InputError("PauliWord: expected exactly three letters, got \"" +
                     std::string(text) + "\"");
  }
  PauliWord word;
  for (std::size_t i = 0; i < 3; ++i) {
    switch (text[i]) {
      case 'X': word.letters[i] = Pauli::X; break;
      case 'Y': word.letters[i] = Pauli::Y; break;
      case 'I': word.letters[i] = Pauli::I; break;
      default:
        throw InputError("PauliWord: letter '" + std::string(1, text[i]) +
                         "' is not one of X, Y, I");
    }
  }
  return word;
}

std::string PauliWord::str() const {
  std::string out;
  for (Pauli letter : letters) {
    out += letter == Pauli::X ? 'X' : (letter == Pauli::Y ? 'Y' : 'I');
  }
  return out;
}

double pauli_word_expectation(const ThreeQubitState& state, const PauliWord& word) {
  const std::array<Complex, 8> transformed = apply_word(word, state.amplitudes());
  Complex expectation(0.0, 0.0);
  for (std::size_t i = 0; i < 8; ++i) {
    expectation += std::conj(state.amplitudes()[i]) * transformed[i];
  }
  return expectation.real();  // the words are Hermitian
}

Matrix8cd pauli_word_matrix(const PauliWord& word) {
  Matrix8cd matrix = Matrix8cd::Zero();
  for (int column = 0; column < 8; ++column) {
    std::array<Complex, 8> basis{};
    basis[static_cast<std::size_t>(column)] = Complex(1.0, 0.0);
    const std::array<Complex, 8> image = apply_word(word, basis);
    for (int row = 0; row < 8; ++row) {
      matrix(row, column) = image[static_cast<std::size_t>(row)];
    }
  }
  return matrix;
}

CommutingReport check_commuting(std::span<const PauliWord> words) {
  CommutingReport report;
  report.all_commute = true;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const Matrix8cd lhs = pauli_word_matrix(words[i]);
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      const Matrix8cd rhs = pauli_word_matrix(words[j]);
      const double largest = (lhs * rhs - rhs * lhs).cwiseAbs().maxCoeff();
      report.max_commutator_entry = std::max(report.max_commutator_entry, largest);
      if (largest > kAlgebraicTol && report.all_commute) {
        report.all_commute = false;
        report.witness = std::make_pair(words[i], words[j]);
      }
    }
  }
  return report;
}

CounterfactualReport counterfactual_contradiction() {
  CounterfactualReport report;
  int all_four = 0;
  int three_plus = 0;
  int xxx_only = 0;
  // Assignment bits, in order: Xa, Ya, Xb, Yb, Xc, Yc (bit set means -1).
  for (int assignment = 0; assignment < 64; ++assignment) {
    const auto value = [assignment](int slot) {
      return (assignment >> slot) & 1 ? -1 : +1;
    };
    const int xa = value(0), ya = value(1);
    const int xb = value(2), yb = value(3);
    const int xc = value(4), yc = value(5);
    const bool xxx = xa * xb * xc == -1;
    const bool xyy = xa * yb * yc == +1;
    const bool yxy = ya * xb * yc == +1;
    const bool yyx = ya * yb * xc == +1;
    if (xxx && xyy && yxy && yyx) ++all_four;
    if (xyy && yxy && yyx) ++three_plus;
    if (xxx) ++xxx_only;
  }
  report.satisfying_all_four = all_four;
  report.satisfying_three_plus = three_plus;
  report.satisfying_xxx_only = xxx_only;
  report.forced_product_note =
      "multiplying the three +1 identities XYY*YXY*YYX squares every Y away "
      "and forces XXX = +1, contradicting XXX = -1";
  return report;
}

int SixBitLaw::required_product(const std::array<Setting, 3>& settings) {
  const int y_count = static_cast<int>(
      std::count(settings.begin(), settings.end(), Setting::Y));
  if (y_count % 2 != 0) {
    return 0;  // odd number of Y's: unconstrained
  }
  return y_count == 0 ? -1 : +1;  // XXX pins -1, the two-Y triples pin +1
}

bool SixBitLaw::allowed(const SixBitState& state) const {
  const int required = required_product(state.settings);
  if (required == 0) {
    return true;
  }
  return state.outcomes[0] * state.outcomes[1] * state.outcomes[2] == required;
}

std::vector<SixBitState> enumerate_allowed_states() {
  const SixBitLaw law;
  std::vector<SixBitState> allowed;
  allowed.reserve(48);
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
      if (law.allowed(state)) {
        allowed.push_back(state);
      }
    }
  }
  return allowed;
}

RunStatistics simulate_runs(std::uint64_t n, std::uint64_t seed) {
  if (n == 0) {
    throw InputError("simulate_runs: n must be at least 1");
  }
  const std::vector<SixBitState> allowed = enumerate_allowed_states();

  struct Sums {
    std::uint64_t count = 0;
    std::array<std::int64_t, 3> single{};
    std::array<std::int64_t, 3> pair{};
    std::int64_t triple = 0;
  };
  std::array<Sums, 8> per_setting{};
  Sums overall;

  Rng rng(seed);
  for (std::uint64_t run = 0; run < n; ++run) {
    const SixBitState& state = allowed[uniform_index(rng, allowed.size())];
    std::size_t setting_index = 0;
    for (int observer = 0; observer < 3; ++observer) {
      setting_index = setting_index * 2 +
                      (state.settings[static_cast<std::size_t>(observer)] == Setting::Y);
    }
    const auto tally = [&state](Sums& sums) {
      const auto& o = state.outcomes;
      ++sums.count;
      for (int i = 0; i < 3; ++i) {
        sums.single[static_cast<std::size_t>(i)] += o[static_cast<std::size_t>(i)];
      }
      sums.pair[0] += o[0] * o[1];
      sums.pair[1] += o[0] * o[2];
      sums.pair[2] += o[1] * o[2];
      sums.triple += o[0] * o[1] * o[2];
    };
    tally(per_setting[setting_index]);
    tally(overall);
  }

  RunStatistics statistics;
  statistics.n = n;
  statistics.seed = seed;
  const auto finalize = [](const Sums& sums, const std::array<Setting, 3>& settings) {
    SettingTally tally;
    tally.settings = settings;
    tally.count = sums.count;
    const double denom = sums.count > 0 ? static_cast<double>(sums.count) : 1.0;
    for (std::size_t i = 0; i < 3; ++i) {
      tally.mean_single[i] = static_cast<double>(sums.single[i]) / denom;
      tally.mean_pair[i] = static_cast<double>(sums.pair[i]) / denom;
    }
    tally.mean_triple = static_cast<double>(sums.triple) / denom;
    return tally;
  };
  for (std::size_t s = 0; s < 8; ++s) {
    const std::array<Setting, 3> settings = {
        (s >> 2) & 1 ? Setting::Y : Setting::X,
        (s >> 1) & 1 ? Setting::Y : Setting::X,
        (s >> 0) & 1 ? Setting::Y : Setting::X,
    };
    statistics.per_setting[s] = finalize(per_setting[s], settings);
  }
  statistics.overall = finalize(overall, {Setting::X, Setting::X, Setting::X});
  return statistics;
}

}  // namespace qca
