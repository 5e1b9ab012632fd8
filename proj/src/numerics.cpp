#include "curvelab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "curvelab/errors.hpp"

namespace curvelab::numerics {

namespace {

double eval_checked(const std::function<double(double)>& f, double x) {
    const double y = f(x);
    if (!std::isfinite(y)) {
        throw NonFiniteError("integrand returned a non-finite value at x = " + std::to_string(x));
    }
    return y;
}

double simpson(double h, double fa, double fm, double fb) {
    return (fa + 4.0 * fm + fb) * (h / 6.0);
}

double adapt(const std::function<double(double)>& f, double a, double m, double b,
             double fa, double fm, double fb, double whole, double tol, int depth,
             const QuadConfig& cfg) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = eval_checked(f, lm);
    const double frm = eval_checked(f, rm);
    const double left = simpson(m - a, fa, flm, fm);
    const double right = simpson(b - m, fm, frm, fb);
    const double err = (left + right - whole) / 15.0;
    if (std::abs(err) <= tol || b - a <= 0.0) {
        return left + right + err;
    }
    if (depth >= cfg.max_depth) {
        throw DepthExceededError("adaptive Simpson did not converge within depth " +
                                 std::to_string(cfg.max_depth));
    }
    return adapt(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth + 1, cfg) +
           adapt(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth + 1, cfg);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadConfig& cfg) {
    if (!(cfg.abs_tol > 0.0) || !(cfg.rel_tol > 0.0) || cfg.max_depth < 1) {
        throw std::invalid_argument("integrate: invalid QuadConfig");
    }
    if (!(a <= b)) {
        throw std::invalid_argument("integrate: requires a <= b");
    }
    if (a == b) {
        return 0.0;
    }
    const double m = 0.5 * (a + b);
    const double fa = eval_checked(f, a);
    const double fm = eval_checked(f, m);
    const double fb = eval_checked(f, b);
    const double whole = simpson(b - a, fa, fm, fb);
    const double tol = cfg.abs_tol + cfg.rel_tol * std::abs(whole);
    return adapt(f, a, m, b, fa, fm, fb, whole, tol, 0, cfg);
}

CumulativeTable cumulative(const std::function<double(double)>& f, double a, double b,
                           int n, const QuadConfig& cfg) {
    if (n < 2) {
        throw std::invalid_argument("cumulative: requires n >= 2");
    }
    if (!(a < b)) {
        throw std::invalid_argument("cumulative: requires a < b");
    }
    CumulativeTable table;
    table.grid.resize(static_cast<std::size_t>(n));
    table.values.resize(static_cast<std::size_t>(n));
    const double h = (b - a) / (n - 1);
    for (int i = 0; i < n; ++i) {
        table.grid[static_cast<std::size_t>(i)] = (i == n - 1) ? b : a + h * i;
    }
    table.values[0] = 0.0;
    for (int i = 1; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        table.values[k] = table.values[k - 1] + integrate(f, table.grid[k - 1], table.grid[k], cfg);
    }
    return table;
}

double invert_monotone(const CumulativeTable& table, double target,
                       const std::function<double(double)>& integrand,
                       const QuadConfig& cfg) {
    const auto& g = table.grid;
    const auto& v = table.values;
    if (g.size() < 2 || g.size() != v.size()) {
        throw std::invalid_argument("invert_monotone: malformed table");
    }
    const double slack = 1e-12 * (1.0 + std::abs(target));
    if (target < v.front() - slack || target > v.back() + slack) {
        throw OutOfRangeError("invert_monotone: target " + std::to_string(target) +
                              " outside tabulated span [" + std::to_string(v.front()) + ", " +
                              std::to_string(v.back()) + "]");
    }
    target = std::clamp(target, v.front(), v.back());

    // Bracketing cell.
    auto it = std::upper_bound(v.begin(), v.end(), target);
    std::size_t hi_idx = std::min<std::size_t>(static_cast<std::size_t>(it - v.begin()), v.size() - 1);
    if (hi_idx == 0) hi_idx = 1;
    const std::size_t lo_idx = hi_idx - 1;
    double lo = g[lo_idx], hi = g[hi_idx];
    const double vlo = v[lo_idx], vhi = v[hi_idx];

    if (!integrand) {
        if (vhi <= vlo) return lo;  // flat cell: any point matches
        return lo + (target - vlo) / (vhi - vlo) * (hi - lo);
    }

    // Residual against the re-integrated antiderivative inside the cell.
    // The convergence goal sits well below the contractual 1e-10 (1 + |target|)
    // so downstream finite differences of inverted positions stay clean; the
    // cell integrals are therefore re-run at a matching tighter tolerance.
    const double goal = 3e-14 * (1.0 + std::abs(target));
    QuadConfig tight = cfg;
    tight.abs_tol = std::min(cfg.abs_tol, 3e-15 * (1.0 + std::abs(target)));
    tight.rel_tol = std::min(cfg.rel_tol, 1e-14);
    const double cell_lo = g[lo_idx];
    double x = (vhi > vlo) ? lo + (target - vlo) / (vhi - vlo) * (hi - lo) : 0.5 * (lo + hi);
    double prev_x = lo, prev_r = vlo - target;
    for (int iter = 0; iter < 80; ++iter) {
        const double r = vlo + integrate(integrand, cell_lo, x, tight) - target;
        if (std::abs(r) <= goal || hi - lo <= 4e-16 * (1.0 + std::abs(x))) {
            return x;
        }
        if (r > 0.0) hi = std::min(hi, x); else lo = std::max(lo, x);

        double step_to = 0.0;
        bool have_step = false;
        const double d = integrand(x);
        if (std::isfinite(d) && d > 0.0) {
            step_to = x - r / d;  // Newton, integrand as derivative
            have_step = true;
        } else if (x != prev_x && r != prev_r) {
            const double slope = (r - prev_r) / (x - prev_x);
            if (std::isfinite(slope) && slope > 0.0) {
                step_to = x - r / slope;  // secant
                have_step = true;
            }
        }
        prev_x = x;
        prev_r = r;
        x = (have_step && step_to > lo && step_to < hi) ? step_to : 0.5 * (lo + hi);
    }
    return x;
}

}  // namespace curvelab::numerics
