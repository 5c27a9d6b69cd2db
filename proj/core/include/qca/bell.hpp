#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "qca/hilbert.hpp"  // Complex

namespace qca {

// ---------------------------------------------------------------------------
// Hidden-variable density W(a, b, lambda) = C * |sin(2a + 2b - 4*lambda)|
// on the cube [0, pi)^3. Angles are polarization angles; the density couples
// the two analyzer settings to the source polarization as a genuine
// three-body correlation: integrating out any single variable leaves a flat
// function of the other two.
// ---------------------------------------------------------------------------

/// Normalization constant C such that W integrates to one over the cube.
/// Computed once by grid-doubling midpoint quadrature with Richardson
/// extrapolation (successive estimates must agree to kQuadratureStopTol) and
/// cached for the process. Throws NumericalError (carrying the achieved
/// estimate) if the quadrature fails to converge.
double normalize_w();

/// W itself; inputs are wrapped into [0, pi) first.
double w_density(double a, double b, double lambda);

enum class MarginalVariable { A, B, Lambda };

/// Integrate W over `which` on a grid x grid mesh of the remaining two
/// variables and return the maximum relative deviation from the mean. Each
/// inner integral is converged to kQuadratureStopTol. grid must be >= 8.
double marginal_flatness(MarginalVariable which, std::size_t grid);

/// The density as a value type: wraps the cached normalization.
class HiddenVariableDensity {
 public:
  HiddenVariableDensity() : normalization_(normalize_w()) {}

  double normalization() const noexcept { return normalization_; }
  double value(double a, double b, double lambda) const { return w_density(a, b, lambda); }

 private:
  double normalization_;
};

/// One draw of (a, b, lambda) from W.
struct WSample {
  double a = 0.0;
  double b = 0.0;
  double lambda = 0.0;
};

/// Seeded Monte Carlo sampler (rejection against the bound W <= C); used by
/// the CLI's sampling demos, never by the deterministic quadratures.
std::vector<WSample> sample_w(const HiddenVariableDensity& density, std::size_t n,
                              std::uint64_t seed);

// ---------------------------------------------------------------------------
// Quantum reference computation: a polarization-entangled photon pair, its
// decomposition over the rotated product basis at analyzer angles (a, b), and
// the CHSH combination.
// ---------------------------------------------------------------------------

/// Two-photon polarization state over the product basis |HH>, |HV>, |VH>, |VV>.
class TwoPhotonState {
 public:
  /// Throws NormalizationError unless normalized within kNormTol.
  explicit TwoPhotonState(std::array<Complex, 4> amplitudes);

  /// (|HH> + |VV>) / sqrt(2).
  static TwoPhotonState bell_pair();

  const std::array<Complex, 4>& amplitudes() const noexcept { return amplitudes_; }

 private:
  std::array<Complex, 4> amplitudes_;
};

/// Projections of a two-photon state onto the measurement basis at analyzer
/// angles (a, b): amplitudes over the outcomes (+,+), (+,-), (-,+), (-,-).
/// |alpha_k|^2 are the joint outcome probabilities and sum to one.
struct MeasurementDecomposition {
  std::array<Complex, 4> alpha;  // order: ++, +-, -+, --

  double probability(std::size_t k) const { return std::norm(alpha.at(k)); }
};

MeasurementDecomposition measurement_decomposition(const TwoPhotonState& state,
                                                   double a, double b);

/// Expectation of the product of the two +-1-valued polarization outcomes at
/// analyzer angles a and b.
double quantum_correlation(const TwoPhotonState& state, double a, double b);

/// Correlation function of two settings, e.g. quantum_correlation bound to a
/// state, or a hidden-variable model.
using CorrelationFn = std::function<double(double, double)>;

/// E(a,b) - E(a,b') + E(a',b) + E(a',b').
double chsh_value(const CorrelationFn& correlation, double a, double a_prime,
                  double b, double b_prime);

/// Deterministic outcome rule of a hidden-variable model: maps (setting,
/// lambda) to +-1.
using OutcomeRule = std::function<int(double setting, double lambda)>;

/// sign(cos 2(setting - lambda)) with sign(0) := +1. The model's outcome rule
/// is a plug-in; this default is the natural polarizer rule, and whether it
/// reproduces the quantum curve is something the toolkit measures rather than
/// assumes.
OutcomeRule default_outcome_rule();

/// Integral over lambda of p(lambda | a, b) * A(a, lambda) * B(b, lambda),
/// where p is the conditional of W given the settings (denominator 2C, the
/// constant established by marginal flatness). Converged by grid doubling;
/// throws NumericalError with the achieved estimate on failure.
double hidden_variable_correlation(const HiddenVariableDensity& density,
                                   const OutcomeRule& outcome_rule, double a, double b);

}  // namespace qca
