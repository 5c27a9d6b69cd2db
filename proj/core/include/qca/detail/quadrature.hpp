#pragma once

#include <cstddef>
#include <functional>

namespace qca::detail {

/// Composite midpoint sum of f over [lo, hi) with n uniform cells,
/// accumulated in index order (deterministic).
double midpoint_sum(const std::function<double(double)>& f, double lo, double hi,
                    std::size_t n);

/// Grid-doubling midpoint quadrature: doubles n until two successive
/// estimates differ by less than stop_tol, then returns the finer one.
/// Throws NumericalError (with the achieved estimate) when max_doublings is
/// exhausted first.
double integrate_midpoint_doubling(const std::function<double(double)>& f, double lo,
                                   double hi, double stop_tol, std::size_t initial_n,
                                   std::size_t max_doublings);

/// Midpoint sum of |sin(2a + 2b - 4l)| over the cube [0, pi)^3 with n cells
/// per axis, evaluated by brute force. O(n^3); test/reference path.
double w_cube_midpoint_direct(std::size_t n);

/// The same sum evaluated through the exact counting identity of the midpoint
/// grid (the half-cell offsets cancel in 2a + 2b - 4l, and the remaining
/// integer combination is equidistributed). O(n); agrees with the direct sum
/// to rounding. Requires even n.
double w_cube_midpoint(std::size_t n);

/// Richardson-accelerated doubling of w_cube_midpoint, stopping when the
/// extrapolated estimates agree to stop_tol.
double w_cube_integral(double stop_tol, std::size_t initial_n, std::size_t max_doublings);

}  // namespace qca::detail
