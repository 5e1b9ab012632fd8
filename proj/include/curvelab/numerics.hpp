#ifndef CURVELAB_NUMERICS_HPP
#define CURVELAB_NUMERICS_HPP

#include <functional>
#include <vector>

namespace curvelab::numerics {

struct QuadConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_depth = 40;
};

/// Tabulated antiderivative F(x) = integral of f from grid.front() to x,
/// sampled on a strictly increasing grid with values[0] = 0.
struct CumulativeTable {
    std::vector<double> grid;
    std::vector<double> values;

    double total() const { return values.back(); }
    double span_lo() const { return grid.front(); }
    double span_hi() const { return grid.back(); }
};

/// Adaptive Simpson quadrature of f over [a, b] with Richardson error
/// estimate. Throws NonFiniteError if f evaluates to NaN/inf and
/// DepthExceededError if the interval cannot be resolved within
/// cfg.max_depth bisections.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadConfig& cfg = {});

/// Cumulative integral of f over [a, b] on n uniformly spaced grid points.
/// Each grid increment is computed by integrate, so values inherit its
/// tolerances; values[0] = 0.
CumulativeTable cumulative(const std::function<double(double)>& f, double a, double b,
                           int n, const QuadConfig& cfg = {});

/// Solve F(x) = target for a non-decreasing tabulated F. When the integrand
/// that produced the table is supplied, the cell-local residual is
/// re-integrated and Newton steps use the integrand as derivative (secant,
/// then bisection as fallbacks), giving |F(x) - target| <= 1e-10 (1 + |target|).
/// Without the integrand the table is inverted as a piecewise-linear function.
/// Throws OutOfRangeError if target lies outside the tabulated span.
double invert_monotone(const CumulativeTable& table, double target,
                       const std::function<double(double)>& integrand = {},
                       const QuadConfig& cfg = {});

}  // namespace curvelab::numerics

#endif
