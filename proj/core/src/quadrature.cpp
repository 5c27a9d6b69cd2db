#include "qca/detail/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qca/errors.hpp"

namespace qca::detail {

namespace {
constexpr double kPi = std::numbers::pi;
}  // namespace

double midpoint_sum(const std::function<double(double)>& f, double lo, double hi,
                    std::size_t n) {
  const double h = (hi - lo) / static_cast<double>(n);
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sum += f(lo + (static_cast<double>(k) + 0.5) * h);
  }
  return sum * h;
}

double integrate_midpoint_doubling(const std::function<double(double)>& f, double lo,
                                   double hi, double stop_tol, std::size_t initial_n,
                                   std::size_t max_doublings) {
  std::size_t n = initial_n;
  double previous = midpoint_sum(f, lo, hi, n);
  for (std::size_t level = 0; level < max_doublings; ++level) {
    n *= 2;
    const double current = midpoint_sum(f, lo, hi, n);
    if (std::abs(current - previous) < stop_tol) {
      return current;
    }
    previous = current;
  }
  throw NumericalError("midpoint quadrature did not converge to " +
                           std::to_string(stop_tol) + " within " +
                           std::to_string(n) + " cells; achieved estimate " +
                           std::to_string(previous),
                       previous);
}

double w_cube_midpoint_direct(std::size_t n) {
  const double h = kPi / static_cast<double>(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a2 = 2.0 * (static_cast<double>(i) + 0.5) * h;
    for (std::size_t j = 0; j < n; ++j) {
      const double b2 = 2.0 * (static_cast<double>(j) + 0.5) * h;
      for (std::size_t k = 0; k < n; ++k) {
        const double l4 = 4.0 * (static_cast<double>(k) + 0.5) * h;
        sum += std::abs(std::sin(a2 + b2 - l4));
      }
    }
  }
  return sum * h * h * h;
}

double w_cube_midpoint(std::size_t n) {
  if (n % 2 != 0) {
    throw InputError("w_cube_midpoint: n must be even");
  }
  // On the midpoint grid the half-cell offsets cancel: the argument
  // 2a_i + 2b_j - 4l_k equals 2h(i + j - 2k), and (i + j - 2k) mod (n/2) is
  // exactly equidistributed over the n^3 index triples (2n^2 hits per
  // residue). The triple sum therefore collapses to one pass over the
  // residues; w_cube_midpoint_direct is the O(n^3) reference for this
  // identity and the two agree to rounding.
  const double h = kPi / static_cast<double>(n);
  double sum = 0.0;
  for (std::size_t r = 0; r < n / 2; ++r) {
    sum += std::abs(std::sin(2.0 * h * static_cast<double>(r)));
  }
  const double hits = 2.0 * static_cast<double>(n) * static_cast<double>(n);
  return sum * hits * h * h * h;
}

double w_cube_integral(double stop_tol, std::size_t initial_n, std::size_t max_doublings) {
  // Midpoint sums with doubled grids, accelerated by Richardson
  // extrapolation; the stop rule compares successive extrapolated values.
  std::size_t n = initial_n;
  double coarse = w_cube_midpoint(n);
  double extrapolated_prev = 0.0;
  bool have_prev = false;
  for (std::size_t level = 0; level < max_doublings; ++level) {
    n *= 2;
    const double fine = w_cube_midpoint(n);
    const double extrapolated = (4.0 * fine - coarse) / 3.0;
    if (have_prev && std::abs(extrapolated - extrapolated_prev) < stop_tol) {
      return extrapolated;
    }
    extrapolated_prev = extrapolated;
    have_prev = true;
    coarse = fine;
  }
  throw NumericalError("cube quadrature did not converge to " +
                           std::to_string(stop_tol) + "; achieved estimate " +
                           std::to_string(extrapolated_prev),
                       extrapolated_prev);
}

}  // namespace qca::detail
