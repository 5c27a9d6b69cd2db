#include "qca/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <utility>

#include "qca/errors.hpp"
#include "qca/random.hpp"
#include "qca/tolerances.hpp"

namespace qca {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_two_pi(double x) {
  double y = std::fmod(x, kTwoPi);
  if (y < 0.0) {
    y += kTwoPi;
  }
  if (y >= kTwoPi) {
    y -= kTwoPi;
  }
  return y + 0.0;  // normalize -0.0
}

Complex complex_pow(Complex base, std::uint64_t exponent) {
  Complex result(1.0, 0.0);
  while (exponent != 0) {
    if (exponent & 1ULL) {
      result *= base;
    }
    base *= base;
    exponent >>= 1;
  }
  return result;
}

/// Cycles of a bijection, in canonical order: scanning states in increasing
/// order, every cycle is first entered at its minimal member.
std::vector<std::vector<State>> permutation_cycles(std::span<const State> target) {
  std::vector<std::vector<State>> cycles;
  std::vector<bool> visited(target.size(), false);
  for (State s = 0; s < target.size(); ++s) {
    if (visited[s]) {
      continue;
    }
    std::vector<State> cycle;
    State cur = s;
    while (!visited[cur]) {
      visited[cur] = true;
      cycle.push_back(cur);
      cur = target[cur];
    }
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

struct PowerMap {
  std::vector<State> target;
  std::vector<Complex> phases;
};

/// Index map and accumulated phases of t evolution steps, O(dim + log t).
PowerMap power_map(const PermutationUnitary& u, std::uint64_t t) {
  const std::size_t dim = u.dimension();
  PowerMap out;
  out.target.resize(dim);
  out.phases.assign(dim, Complex(1.0, 0.0));
  const auto cycles = permutation_cycles(u.target());
  const auto phases = u.phases();
  std::vector<Complex> prefix;
  for (const auto& states : cycles) {
    const std::uint64_t length = states.size();
    const std::uint64_t q = t % length;
    if (u.has_trivial_phases()) {
      for (std::uint64_t j = 0; j < length; ++j) {
        out.target[states[j]] = states[(j + q) % length];
      }
      continue;
    }
    // prefix[j] = product of the first j phases along the cycle walk.
    prefix.assign(length + 1, Complex(1.0, 0.0));
    for (std::uint64_t j = 0; j < length; ++j) {
      prefix[j + 1] = prefix[j] * phases[states[j]];
    }
    const Complex around = prefix[length];
    const Complex around_pow = complex_pow(around, t / length);
    for (std::uint64_t j = 0; j < length; ++j) {
      const std::uint64_t end = j + q;
      const Complex path = (end <= length)
                               ? prefix[end] / prefix[j]
                               : (prefix[end - length] / prefix[j]) * around;
      out.target[states[j]] = states[(j + q) % length];
      out.phases[states[j]] = around_pow * path;
    }
  }
  return out;
}

}  // namespace

PermutationUnitary::PermutationUnitary(std::vector<State> target,
                                       std::vector<Complex> phases)
    : target_(std::move(target)), phases_(std::move(phases)) {
  const std::size_t dim = target_.size();
  if (dim == 0) {
    throw InputError("PermutationUnitary: dimension must be at least 1");
  }
  if (phases_.size() != dim) {
    throw InputError("PermutationUnitary: " + std::to_string(phases_.size()) +
                     " phases for dimension " + std::to_string(dim));
  }
  std::vector<bool> hit(dim, false);
  for (std::size_t i = 0; i < dim; ++i) {
    const State image = target_[i];
    if (image >= dim) {
      throw InputError("PermutationUnitary: target[" + std::to_string(i) +
                       "] is out of range");
    }
    if (hit[image]) {
      throw InputError("PermutationUnitary: target is not a bijection (row " +
                       std::to_string(image) + " hit twice)");
    }
    hit[image] = true;
  }
  trivial_phases_ = true;
  for (std::size_t i = 0; i < dim; ++i) {
    if (std::abs(std::abs(phases_[i]) - 1.0) > kAlgebraicTol) {
      throw InputError("PermutationUnitary: phase " + std::to_string(i) +
                       " does not have modulus one");
    }
    if (!(phases_[i] == Complex(1.0, 0.0))) {
      trivial_phases_ = false;
    }
  }
}

PermutationUnitary PermutationUnitary::identity(std::size_t dimension) {
  std::vector<State> target(dimension);
  std::iota(target.begin(), target.end(), State{0});
  return PermutationUnitary(std::move(target),
                            std::vector<Complex>(dimension, Complex(1.0, 0.0)));
}

Eigen::MatrixXcd PermutationUnitary::to_dense() const {
  if (dimension() > kDenseDimensionCap) {
    throw SizeError("to_dense: dimension " + std::to_string(dimension()) +
                    " exceeds the dense cap of " + std::to_string(kDenseDimensionCap));
  }
  Eigen::MatrixXcd dense = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dimension()),
                                                  static_cast<Eigen::Index>(dimension()));
  for (std::size_t i = 0; i < dimension(); ++i) {
    dense(static_cast<Eigen::Index>(target_[i]), static_cast<Eigen::Index>(i)) =
        phases_[i];
  }
  return dense;
}

PermutationUnitary lift_to_unitary(const UpdateRule& rule) {
  return lift_to_unitary(rule,
                         std::vector<Complex>(rule.size(), Complex(1.0, 0.0)));
}

PermutationUnitary lift_to_unitary(const UpdateRule& rule, std::vector<Complex> phases) {
  if (!rule.is_invertible()) {
    throw InvertibilityError(
        "lift_to_unitary: the update rule is not invertible; quotient it into "
        "information classes first (compute_info_classes / class_unitary)");
  }
  std::vector<State> target(rule.map().begin(), rule.map().end());
  return PermutationUnitary(std::move(target), std::move(phases));
}

PermutationUnitary unitary_power(const PermutationUnitary& u, std::uint64_t t) {
  PowerMap map = power_map(u, t);
  return PermutationUnitary(std::move(map.target), std::move(map.phases));
}

QuantumState::QuantumState(std::vector<Complex> amplitudes)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty()) {
    throw InputError("QuantumState: dimension must be at least 1");
  }
  double norm_sq = 0.0;
  for (const Complex& amplitude : amplitudes_) {
    norm_sq += std::norm(amplitude);
  }
  if (std::abs(norm_sq - 1.0) > kNormTol) {
    throw NormalizationError("QuantumState: squared amplitudes sum to " +
                             std::to_string(norm_sq) + ", not 1");
  }
}

QuantumState QuantumState::basis(std::size_t dimension, State k) {
  if (k >= dimension) {
    throw InputError("QuantumState::basis: index out of range");
  }
  std::vector<Complex> amplitudes(dimension, Complex(0.0, 0.0));
  amplitudes[k] = Complex(1.0, 0.0);
  return QuantumState(std::move(amplitudes));
}

QuantumState QuantumState::normalized(std::vector<Complex> raw) {
  double norm_sq = 0.0;
  for (const Complex& amplitude : raw) {
    norm_sq += std::norm(amplitude);
  }
  if (norm_sq == 0.0) {
    throw InputError("QuantumState::normalized: zero vector");
  }
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (Complex& amplitude : raw) {
    amplitude *= inv;
  }
  return QuantumState(std::move(raw));
}

QuantumState evolve_state(const PermutationUnitary& u, const QuantumState& psi,
                          std::uint64_t t) {
  if (psi.dimension() != u.dimension()) {
    throw InputError("evolve_state: state dimension " + std::to_string(psi.dimension()) +
                     " does not match unitary dimension " +
                     std::to_string(u.dimension()));
  }
  const PowerMap map = power_map(u, t);
  const auto amplitudes = psi.amplitudes();
  std::vector<Complex> out(u.dimension());
  if (u.has_trivial_phases()) {
    // Pure relabeling: amplitudes move verbatim, no arithmetic at all.
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
      out[map.target[i]] = amplitudes[i];
    }
  } else {
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
      out[map.target[i]] = map.phases[i] * amplitudes[i];
    }
  }
  return QuantumState(std::move(out));
}

std::vector<double> born_probabilities(const QuantumState& psi) {
  std::vector<double> probabilities(psi.dimension());
  const auto amplitudes = psi.amplitudes();
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    probabilities[i] = std::norm(amplitudes[i]);
  }
  return probabilities;
}

std::vector<double> born_probabilities(std::span<const Complex> amplitudes) {
  double norm_sq = 0.0;
  for (const Complex& amplitude : amplitudes) {
    norm_sq += std::norm(amplitude);
  }
  if (std::abs(norm_sq - 1.0) > kNormTol) {
    throw NormalizationError("born_probabilities: amplitudes are not normalized");
  }
  std::vector<double> probabilities(amplitudes.size());
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    probabilities[i] = std::norm(amplitudes[i]);
  }
  return probabilities;
}

HamiltonianSpectrum extract_hamiltonian(const PermutationUnitary& u) {
  const std::size_t dim = u.dimension();
  if (dim > kDenseDimensionCap) {
    throw SizeError("extract_hamiltonian: dimension " + std::to_string(dim) +
                    " exceeds the dense cap of " + std::to_string(kDenseDimensionCap));
  }
  HamiltonianSpectrum spectrum;
  spectrum.eigenphases.reserve(dim);
  spectrum.cycle_origin.reserve(dim);
  spectrum.eigenvectors = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                 static_cast<Eigen::Index>(dim));

  const auto cycles = permutation_cycles(u.target());
  const auto phases = u.phases();
  Eigen::Index column = 0;
  for (std::uint32_t cycle_id = 0; cycle_id < cycles.size(); ++cycle_id) {
    const auto& states = cycles[cycle_id];
    const std::size_t length = states.size();

    Complex around(1.0, 0.0);
    for (State s : states) {
      around *= phases[s];
    }
    const double theta = std::arg(around);

    // The cycle's eigenvalues are the T-th roots of the accumulated phase;
    // report them as eigenphases phi with eigenvalue exp(-i*phi), ascending.
    std::vector<double> cycle_phases(length);
    for (std::size_t m = 0; m < length; ++m) {
      const double alpha =
          (theta + kTwoPi * static_cast<double>(m)) / static_cast<double>(length);
      cycle_phases[m] = wrap_two_pi(-alpha);
    }
    std::sort(cycle_phases.begin(), cycle_phases.end());

    for (std::size_t m = 0; m < length; ++m) {
      const double phi = cycle_phases[m];
      const Complex mu = std::polar(1.0, -phi);
      // Fourier mode on the cycle, anchored real-positive at the minimal state.
      Complex component(1.0 / std::sqrt(static_cast<double>(length)), 0.0);
      spectrum.eigenvectors(static_cast<Eigen::Index>(states[0]), column) = component;
      for (std::size_t j = 0; j + 1 < length; ++j) {
        component = phases[states[j]] * component * std::conj(mu);
        spectrum.eigenvectors(static_cast<Eigen::Index>(states[j + 1]), column) =
            component;
      }
      spectrum.eigenphases.push_back(phi);
      spectrum.cycle_origin.push_back(cycle_id);
      ++column;
    }
  }
  return spectrum;
}

Eigen::MatrixXcd reconstruct_unitary(const HamiltonianSpectrum& spectrum) {
  const auto dim = static_cast<Eigen::Index>(spectrum.dimension());
  Eigen::VectorXcd eigenvalues(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    eigenvalues[k] = std::polar(1.0, -spectrum.eigenphases[static_cast<std::size_t>(k)]);
  }
  return spectrum.eigenvectors * eigenvalues.asDiagonal() *
         spectrum.eigenvectors.adjoint();
}

TruncatedSpectrum truncate_spectrum(const HamiltonianSpectrum& spectrum, double e_max) {
  if (!(e_max >= 0.0)) {
    throw InputError("truncate_spectrum: e_max must be non-negative");
  }
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < spectrum.dimension(); ++k) {
    if (spectrum.eigenphases[k] <= e_max) {
      keep.push_back(k);
    }
  }
  TruncatedSpectrum truncated;
  truncated.basis = Eigen::MatrixXcd(spectrum.eigenvectors.rows(),
                                     static_cast<Eigen::Index>(keep.size()));
  truncated.eigenphases.reserve(keep.size());
  truncated.cycle_origin.reserve(keep.size());
  for (std::size_t out = 0; out < keep.size(); ++out) {
    truncated.basis.col(static_cast<Eigen::Index>(out)) =
        spectrum.eigenvectors.col(static_cast<Eigen::Index>(keep[out]));
    truncated.eigenphases.push_back(spectrum.eigenphases[keep[out]]);
    truncated.cycle_origin.push_back(spectrum.cycle_origin[keep[out]]);
  }
  return truncated;
}

OntologyReport check_ontology_conservation(const PermutationUnitary& u,
                                           std::size_t trials, std::uint64_t seed) {
  OntologyReport report;
  report.seed = seed;
  report.trials = trials;
  report.min_superposition_distance = std::numeric_limits<double>::infinity();
  Rng rng(seed);
  const std::size_t dim = u.dimension();
  const std::uint64_t max_power = 4 * static_cast<std::uint64_t>(dim) + 1;

  // Basis states must stay basis states under sampled powers of U.
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const std::uint64_t t = uniform_index(rng, max_power);
    for (std::size_t i = 0; i < dim; ++i) {
      const QuantumState image = evolve_state(u, QuantumState::basis(dim, i), t);
      double largest = 0.0;
      double second = 0.0;
      for (const Complex& amplitude : image.amplitudes()) {
        const double modulus = std::abs(amplitude);
        if (modulus > largest) {
          second = largest;
          largest = modulus;
        } else if (modulus > second) {
          second = modulus;
        }
      }
      const double deviation = std::max(std::abs(largest - 1.0), second);
      report.max_basis_deviation = std::max(report.max_basis_deviation, deviation);
      if (deviation > kAlgebraicTol) {
        report.failures.push_back(
            "basis state " + std::to_string(i) + " under t=" + std::to_string(t) +
            " is not a basis state (deviation " + std::to_string(deviation) + ")");
      }
    }
  }

  // A genuine two-term superposition must never approach a basis vector.
  for (std::size_t trial = 0; trial < trials; ++trial) {
    if (dim < 2) {
      break;
    }
    const State i = static_cast<State>(uniform_index(rng, dim));
    State j = static_cast<State>(uniform_index(rng, dim - 1));
    if (j >= i) {
      ++j;
    }
    std::vector<Complex> raw(dim, Complex(0.0, 0.0));
    raw[i] = Complex(1.0, 0.0);
    raw[j] = Complex(1.0, 0.0);
    const QuantumState superposition = QuantumState::normalized(std::move(raw));
    const std::uint64_t t = uniform_index(rng, max_power);
    const QuantumState image = evolve_state(u, superposition, t);
    double largest = 0.0;
    for (const Complex& amplitude : image.amplitudes()) {
      largest = std::max(largest, std::abs(amplitude));
    }
    // Distance to the nearest basis vector, minimized over a global phase.
    const double distance = std::sqrt(std::max(0.0, 2.0 - 2.0 * largest));
    report.min_superposition_distance =
        std::min(report.min_superposition_distance, distance);
    if (distance <= kBasisProximityTol) {
      report.failures.push_back("superposition of states " + std::to_string(i) + "," +
                                std::to_string(j) + " under t=" + std::to_string(t) +
                                " came within " + std::to_string(distance) +
                                " of a basis vector");
    }
  }

  report.passed = report.failures.empty();
  return report;
}

}  // namespace qca
