#include "qca/bell.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <unordered_map>
#include <utility>

#include "qca/detail/quadrature.hpp"
#include "qca/errors.hpp"
#include "qca/random.hpp"
#include "qca/tolerances.hpp"

namespace qca {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_pi(double x) {
  double y = std::fmod(x, kPi);
  if (y < 0.0) {
    y += kPi;
  }
  if (y >= kPi) {
    y -= kPi;
  }
  return y + 0.0;
}

// Grid-doubling midpoint quadrature over a plain callable (no std::function
// overhead on the hot path). Same contract as detail::integrate_midpoint_doubling.
template <typename F>
double integrate_doubling(F&& f, double lo, double hi, double stop_tol,
                          std::size_t initial_n, std::size_t max_doublings) {
  const auto sum_n = [&](std::size_t n) {
    const double h = (hi - lo) / static_cast<double>(n);
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      sum += f(lo + (static_cast<double>(k) + 0.5) * h);
    }
    return sum * h;
  };
  std::size_t n = initial_n;
  double previous = sum_n(n);
  for (std::size_t level = 0; level < max_doublings; ++level) {
    n *= 2;
    const double current = sum_n(n);
    if (std::abs(current - previous) < stop_tol) {
      return current;
    }
    previous = current;
  }
  throw NumericalError("quadrature did not converge to " + std::to_string(stop_tol) +
                           "; achieved estimate " + std::to_string(previous),
                       previous);
}

/// Converged integral over one period-[0, pi) variable of C*|sin(c*x + offset)|.
double abs_sin_line_integral(double amplitude, double frequency, double offset) {
  return integrate_doubling(
      [=](double x) { return amplitude * std::abs(std::sin(frequency * x + offset)); },
      0.0, kPi, kQuadratureStopTol, 4096, 8);
}

std::int64_t positive_mod(std::int64_t value, std::int64_t modulus) {
  const std::int64_t r = value % modulus;
  return r < 0 ? r + modulus : r;
}

}  // namespace

double normalize_w() {
  // I = integral of |sin(2a + 2b - 4l)| over the cube; C = 1/I. Cached: the
  // quadrature is deterministic, so every caller sees the same constant.
  static const double normalization = [] {
    const double integral = detail::w_cube_integral(kQuadratureStopTol, 64, 16);
    return 1.0 / integral;
  }();
  return normalization;
}

double w_density(double a, double b, double lambda) {
  const double aw = wrap_pi(a);
  const double bw = wrap_pi(b);
  const double lw = wrap_pi(lambda);
  return normalize_w() * std::abs(std::sin(2.0 * aw + 2.0 * bw - 4.0 * lw));
}

double marginal_flatness(MarginalVariable which, std::size_t grid) {
  if (grid < 8) {
    throw InputError("marginal_flatness: grid must be at least 8");
  }
  const double normalization = normalize_w();
  const auto g = static_cast<std::int64_t>(grid);

  // On the midpoint mesh the inner integrand depends on the outer point only
  // through an integer combination of the indices:
  //   lambda-marginal at (a_i, b_j):  C*|sin(4l - phi)|,  phi = 2*pi*(i+j+1)/G
  //   a-marginal at (b_j, l_k):       C*|sin(2a + psi)|,  psi = pi*(2j-4k-1)/G
  //   b-marginal at (a_i, l_k):       same with i in place of j.
  // Distinct offsets are therefore memoizable by that integer, which keeps
  // the converged inner quadratures to O(grid) instead of O(grid^2).
  std::unordered_map<std::int64_t, double> memo;
  const auto lambda_marginal = [&](std::int64_t s) {
    const auto [it, fresh] = memo.try_emplace(s, 0.0);
    if (fresh) {
      const double phi = 2.0 * kPi * static_cast<double>(s) / static_cast<double>(g);
      it->second = abs_sin_line_integral(normalization, 4.0, -phi);
    }
    return it->second;
  };
  const auto setting_marginal = [&](std::int64_t u) {
    const auto [it, fresh] = memo.try_emplace(u, 0.0);
    if (fresh) {
      const double psi = kPi * static_cast<double>(u) / static_cast<double>(g);
      it->second = abs_sin_line_integral(normalization, 2.0, psi);
    }
    return it->second;
  };

  double sum = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::int64_t i = 0; i < g; ++i) {
    for (std::int64_t j = 0; j < g; ++j) {
      double value = 0.0;
      switch (which) {
        case MarginalVariable::Lambda:
          value = lambda_marginal(positive_mod(i + j + 1, g));
          break;
        case MarginalVariable::A:
          value = setting_marginal(positive_mod(2 * i - 4 * j - 1, 2 * g));
          break;
        case MarginalVariable::B:
          value = setting_marginal(positive_mod(2 * i - 4 * j - 1, 2 * g));
          break;
      }
      sum += value;
      lo = std::min(lo, value);
      hi = std::max(hi, value);
    }
  }
  const double mean = sum / (static_cast<double>(g) * static_cast<double>(g));
  return std::max(hi - mean, mean - lo) / mean;
}

std::vector<WSample> sample_w(const HiddenVariableDensity& density, std::size_t n,
                              std::uint64_t seed) {
  std::vector<WSample> samples;
  samples.reserve(n);
  Rng rng(seed);
  const double bound = density.normalization();  // W <= C everywhere
  while (samples.size() < n) {
    WSample candidate;
    candidate.a = kPi * uniform_unit(rng);
    candidate.b = kPi * uniform_unit(rng);
    candidate.lambda = kPi * uniform_unit(rng);
    const double u = uniform_unit(rng);
    if (u * bound < density.value(candidate.a, candidate.b, candidate.lambda)) {
      samples.push_back(candidate);
    }
  }
  return samples;
}

TwoPhotonState::TwoPhotonState(std::array<Complex, 4> amplitudes)
    : amplitudes_(amplitudes) {
  double norm_sq = 0.0;
  for (const Complex& amplitude : amplitudes_) {
    norm_sq += std::norm(amplitude);
  }
  if (std::abs(norm_sq - 1.0) > kNormTol) {
    throw NormalizationError("TwoPhotonState: squared amplitudes sum to " +
                             std::to_string(norm_sq) + ", not 1");
  }
}

TwoPhotonState TwoPhotonState::bell_pair() {
  const double r = 1.0 / std::sqrt(2.0);
  return TwoPhotonState({Complex(r, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0),
                         Complex(r, 0.0)});
}

MeasurementDecomposition measurement_decomposition(const TwoPhotonState& state,
                                                   double a, double b) {
  // Rotated single-photon analyzer bases: |+> along the analyzer angle,
  // |-> orthogonal. Components over (H, V).
  const double ca = std::cos(a), sa = std::sin(a);
  const double cb = std::cos(b), sb = std::sin(b);
  const double basis_a[2][2] = {{ca, sa}, {-sa, ca}};   // [outcome][H/V]
  const double basis_b[2][2] = {{cb, sb}, {-sb, cb}};

  const auto& psi = state.amplitudes();
  MeasurementDecomposition decomposition;
  for (int oa = 0; oa < 2; ++oa) {
    for (int ob = 0; ob < 2; ++ob) {
      Complex alpha(0.0, 0.0);
      for (int pa = 0; pa < 2; ++pa) {
        for (int pb = 0; pb < 2; ++pb) {
          alpha += basis_a[oa][pa] * basis_b[ob][pb] *
                   psi[static_cast<std::size_t>(2 * pa + pb)];
        }
      }
      decomposition.alpha[static_cast<std::size_t>(2 * oa + ob)] = alpha;
    }
  }
  return decomposition;
}

double quantum_correlation(const TwoPhotonState& state, double a, double b) {
  const MeasurementDecomposition d = measurement_decomposition(state, a, b);
  return d.probability(0) - d.probability(1) - d.probability(2) + d.probability(3);
}

double chsh_value(const CorrelationFn& correlation, double a, double a_prime,
                  double b, double b_prime) {
  return correlation(a, b) - correlation(a, b_prime) + correlation(a_prime, b) +
         correlation(a_prime, b_prime);
}

OutcomeRule default_outcome_rule() {
  return [](double setting, double lambda) {
    return std::cos(2.0 * (setting - lambda)) >= 0.0 ? +1 : -1;
  };
}

double hidden_variable_correlation(const HiddenVariableDensity& density,
                                   const OutcomeRule& outcome_rule, double a, double b) {
  // p(lambda | a, b) = W / (2C): the lambda-marginal of W is the constant 2C.
  const double inv_conditional = 1.0 / (2.0 * density.normalization());
  return integrate_doubling(
      [&](double lambda) {
        const double weight = density.value(a, b, lambda) * inv_conditional;
        return weight * static_cast<double>(outcome_rule(a, lambda)) *
               static_cast<double>(outcome_rule(b, lambda));
      },
      0.0, kPi, kQuadratureTol, 16384, 10);
}

}  // namespace qca
