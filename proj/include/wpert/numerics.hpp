#pragma once

#include <cstdint>
#include <functional>

namespace wpert {

//! Result of an adaptive quadrature run.
struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;  // absolute
    std::int64_t evaluations = 0;
};

//! Adaptive Simpson integration of f over [lo, hi].
//!
//! Intervals are bisected until the local Richardson error estimate drops
//! below tol scaled by the interval's share of [lo, hi]. Exact for
//! polynomials up to degree 3. Endpoint values are taken as given (callers
//! supply one-sided limits there if f is singular at the boundary).
//!
//! Throws std::invalid_argument on bad bounds or tolerance,
//! std::runtime_error when f is non-finite at an interior node or the
//! bisection depth exceeds 60 without convergence.
QuadratureResult integrate(const std::function<double(double)>& f,
                           double lo, double hi, double tol);

//! Leftmost root of a nondecreasing g on [lo, hi]: inf{x : g(x) >= 0}.
//!
//! Requires g(lo) <= 0 <= g(hi) (bracket error otherwise). Bisection with
//! secant acceleration; probes never leave the bracket. Stops when both
//! bracket ends have |g| <= tol or the bracket width falls below
//! tol * (hi - lo). On flat segments (g == 0 over an interval) the result
//! converges to the left edge of the segment.
double find_root_monotone(const std::function<double(double)>& g,
                          double lo, double hi, double tol);

}  // namespace wpert
