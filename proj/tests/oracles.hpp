#ifndef CURVELAB_TESTS_ORACLES_HPP
#define CURVELAB_TESTS_ORACLES_HPP

#include <cmath>
#include <functional>

// Test-side reference numerics, kept independent of the library code paths
// they are used to check.

namespace oracles {

/// Composite fixed-step Simpson rule with the given (even) panel count.
inline double simpson_fixed(const std::function<double(double)>& f, double a, double b,
                            int panels) {
    const double h = (b - a) / panels;
    double acc = f(a) + f(b);
    for (int i = 1; i < panels; ++i) {
        acc += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    return acc * h / 3.0;
}

/// 4th-order central first derivative.
template <typename F>
double fd1(const F& f, double x, double h) {
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

/// 4th-order central second derivative.
template <typename F>
double fd2(const F& f, double x, double h) {
    return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) /
           (12 * h * h);
}

/// 4th-order central third derivative.
template <typename F>
double fd3(const F& f, double x, double h) {
    return (f(x - 3 * h) - 8 * f(x - 2 * h) + 13 * f(x - h) - 13 * f(x + h) + 8 * f(x + 2 * h) -
            f(x + 3 * h)) /
           (8 * h * h * h);
}

}  // namespace oracles

#endif
