#pragma once

// Test-side oracles, independent of the library implementation paths they
// check: the root of f is recomputed here by plain midpoint bisection on the
// formulas written out verbatim, and derivatives are checked against central
// finite differences.

#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracle {

// f(c) for theta != 1/2, 1
inline double gap_general(double c, double theta, double lambda) {
    const double b = 2.0 * theta - 1.0 + 2.0 * c * theta;
    const double a = 2.0 - 2.0 * theta - c * (2.0 * theta - 1.0);
    const double base = c / (b * a);
    return std::pow(base, (1.0 - theta) / (theta - 0.5)) - b * b / (1.0 - lambda);
}

// f(c) for theta = 1/2
inline double gap_half(double c, double lambda) {
    return std::exp((c * c - 1.0) / c) - c * c / (1.0 - lambda);
}

inline double bisect(const std::function<double(double)>& f, double a, double b) {
    double fa = f(a);
    double fb = f(b);
    if (!(fa < 0.0 && fb > 0.0)) throw std::runtime_error("oracle::bisect: not bracketed");
    for (int i = 0; i < 200; ++i) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }
    return 0.5 * (a + b);
}

// Root of f on the regime bracket, by bisection on the verbatim formulas.
inline double solve_c(double theta, double lambda) {
    const double cbar = (1.0 - theta) / theta;
    if (theta == 0.5) {
        return bisect([&](double c) { return gap_half(c, lambda); }, 1.0 + 1e-12, 1e6);
    }
    const auto f = [&](double c) { return gap_general(c, theta, lambda); };
    if (theta < 0.5) {
        double hi = cbar + 1.0;
        while (f(hi) <= 0.0) hi = cbar + 2.0 * (hi - cbar);
        return bisect(f, cbar + 1e-12, hi);
    }
    if (theta < 1.0) {
        const double right = (1.0 - theta) / (theta - 0.5);
        return bisect(f, cbar + 1e-13 * (right - cbar), right - 1e-13 * (right - cbar));
    }
    return bisect(f, cbar * (1.0 - 1e-13), -1e-13 * std::abs(cbar));
}

inline double s_bar_of_c(double theta, double c) {
    if (theta == 0.5) return std::exp((c * c - 1.0) / c);
    const double b = 2.0 * theta - 1.0 + 2.0 * c * theta;
    const double a = 2.0 - 2.0 * theta - c * (2.0 * theta - 1.0);
    return std::pow(c / (b * a), 1.0 / (2.0 * theta - 1.0));
}

// Signed real cube root: for theta > 1 the factor (6/(theta(1-theta)))^{1/3}
// is read as the negative real root.
inline double cbrt_signed(double x) { return std::cbrt(x); }

inline double central_diff(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

} // namespace oracle
