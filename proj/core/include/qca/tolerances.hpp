#pragma once

#include <cstddef>

namespace qca {

// Numeric contracts used throughout the library. These exact values are part
// of the observable behavior (construction checks, reports, refusal paths),
// so they live here as named constants instead of being scattered as literals.

/// Algebraic identities: unitarity, phase modulus, commutators, Born multisets.
inline constexpr double kAlgebraicTol = 1e-12;

/// Spectral identities: eigenphase values, orthonormality, reconstruction.
inline constexpr double kSpectralTol = 1e-10;

/// State-vector normalization.
inline constexpr double kNormTol = 1e-10;

/// Integral targets (density normalization, marginal flatness, correlations).
inline constexpr double kQuadratureTol = 1e-6;

/// Stopping rule for grid-doubling quadrature: successive estimates must agree
/// to this before an integral is considered converged.
inline constexpr double kQuadratureStopTol = 1e-8;

/// Threshold below which a state would count as "close to a basis vector".
inline constexpr double kBasisProximityTol = 1e-6;

/// Largest dimension that is ever materialized as a dense complex matrix.
/// Beyond this, only the index/phase representation is available and the
/// spectral operations refuse with a SizeError.
inline constexpr std::size_t kDenseDimensionCap = 4096;

}  // namespace qca
