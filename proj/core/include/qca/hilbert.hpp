#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qca/automaton.hpp"

namespace qca {

using Complex = std::complex<double>;

/// The unitary lift of an invertible update rule: a matrix with exactly one
/// nonzero entry per row and per column, each of modulus one. Column i holds
/// phases()[i] at row target()[i], i.e. one evolution step sends amplitude
/// alpha_i to phases()[i] * alpha_i at basis index target()[i].
///
/// The index/phase representation is the primary one; dense matrices are a
/// convenience capped at kDenseDimensionCap.
class PermutationUnitary {
 public:
  /// Validates that target is a bijection and every phase has modulus one
  /// within kAlgebraicTol. Throws InputError.
  PermutationUnitary(std::vector<State> target, std::vector<Complex> phases);

  static PermutationUnitary identity(std::size_t dimension);

  std::size_t dimension() const noexcept { return target_.size(); }
  std::span<const State> target() const noexcept { return target_; }
  std::span<const Complex> phases() const noexcept { return phases_; }

  /// True iff every phase is exactly 1+0i. Evolution then moves amplitudes
  /// without any arithmetic on them.
  bool has_trivial_phases() const noexcept { return trivial_phases_; }

  /// Dense matrix form. Throws SizeError above kDenseDimensionCap.
  Eigen::MatrixXcd to_dense() const;

 private:
  std::vector<State> target_;
  std::vector<Complex> phases_;
  bool trivial_phases_;
};

/// Lift an invertible rule to a permutation unitary with all phases equal to
/// one (the default phase policy). Throws InvertibilityError for
/// non-invertible rules, pointing the caller at the information-class
/// quotient instead.
PermutationUnitary lift_to_unitary(const UpdateRule& rule);

/// Same, with one caller-chosen unit phase per source index.
PermutationUnitary lift_to_unitary(const UpdateRule& rule, std::vector<Complex> phases);

/// U^t as a permutation unitary (targets composed, phases accumulated along
/// the evolution paths). O(dimension + log t).
PermutationUnitary unitary_power(const PermutationUnitary& u, std::uint64_t t);

/// A normalized vector of complex amplitudes over the ontological basis.
class QuantumState {
 public:
  /// Requires |sum |alpha_i|^2 - 1| <= kNormTol; throws NormalizationError.
  explicit QuantumState(std::vector<Complex> amplitudes);

  /// Basis vector e_k.
  static QuantumState basis(std::size_t dimension, State k);

  /// Rescale arbitrary raw amplitudes to unit norm. Throws InputError on a
  /// zero vector.
  static QuantumState normalized(std::vector<Complex> raw);

  std::size_t dimension() const noexcept { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }

 private:
  std::vector<Complex> amplitudes_;
};

/// Apply t evolution steps to a state. Norm is preserved; with trivial phases
/// the amplitudes are moved verbatim, so the multiset {|alpha_i|^2} is exactly
/// invariant. Throws InputError on dimension mismatch.
QuantumState evolve_state(const PermutationUnitary& u, const QuantumState& psi,
                          std::uint64_t t);

/// Outcome probabilities |alpha_i|^2 of a normalized state.
std::vector<double> born_probabilities(const QuantumState& psi);

/// Same for raw amplitudes; throws NormalizationError if they are not
/// normalized within kNormTol.
std::vector<double> born_probabilities(std::span<const Complex> amplitudes);

/// Spectrum of the one-step evolution: eigenphase phi means the unitary has
/// eigenvalue exp(-i*phi). Eigenphases are reduced to [0, 2*pi), so each
/// cycle's zero mode is its ground state.
///
/// Deterministic layout: cycles in increasing order of minimal member,
/// eigenphases ascending within each cycle. Eigenvector k lives in column k
/// and is supported on the states of cycle cycle_origin[k]; its component on
/// the cycle's minimal state is real positive (1/sqrt(T)).
struct HamiltonianSpectrum {
  std::vector<double> eigenphases;
  Eigen::MatrixXcd eigenvectors;           // orthonormal columns
  std::vector<std::uint32_t> cycle_origin;  // per eigenpair: cycle index

  std::size_t dimension() const noexcept { return eigenphases.size(); }
};

/// Diagonalize a permutation unitary. Each cycle of length T contributes the
/// T discrete-Fourier modes supported on it; with nontrivial phases the modes
/// are twisted by the accumulated phase around the cycle. Exact up to
/// floating-point rounding; no iterative eigensolver is involved.
/// Throws SizeError above kDenseDimensionCap.
HamiltonianSpectrum extract_hamiltonian(const PermutationUnitary& u);

/// V * diag(exp(-i*phi)) * V^dagger; reproduces the unitary the spectrum was
/// extracted from within kSpectralTol.
Eigen::MatrixXcd reconstruct_unitary(const HamiltonianSpectrum& spectrum);

/// The low-energy sector: eigenpairs with eigenphase <= e_max.
struct TruncatedSpectrum {
  Eigen::MatrixXcd basis;                   // orthonormal columns
  std::vector<double> eigenphases;
  std::vector<std::uint32_t> cycle_origin;

  std::size_t dimension() const noexcept { return eigenphases.size(); }
};

/// Keep exactly the eigenpairs with eigenphase <= e_max. The retained span is
/// invariant under the unitary, so evolution restricted to it stays unitary.
/// Throws InputError for negative e_max.
TruncatedSpectrum truncate_spectrum(const HamiltonianSpectrum& spectrum, double e_max);

/// Result of the ontology-conservation check: basis states must map to basis
/// states (one entry of modulus one, the rest below kAlgebraicTol) under U and
/// its sampled powers, while genuine superpositions must never come within
/// kBasisProximityTol of any basis vector. Failures are reported as witnesses,
/// not thrown.
struct OntologyReport {
  bool passed = false;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  /// Worst deviation of any evolved basis state from an exact basis vector.
  double max_basis_deviation = 0.0;
  /// Smallest phase-insensitive distance of any evolved superposition to its
  /// nearest basis vector.
  double min_superposition_distance = 0.0;
  std::vector<std::string> failures;
};

OntologyReport check_ontology_conservation(const PermutationUnitary& u,
                                           std::size_t trials, std::uint64_t seed);

}  // namespace qca
