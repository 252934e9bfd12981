#pragma once

#include "shadowtc/model.hpp"

namespace shadowtc {

/// Solved free-boundary constants for one (theta, lambda) pair. c is the
/// constant bond/stock ratio phi0/(m phi); s_bar the reflection boundary of
/// the ratio S/m. In the degenerate regime theta = 1, c = 0 and s_bar is
/// +infinity, and all four portfolio-fraction boundaries collapse to 1.
struct FrictionSolution {
    MarketParams params;
    double c;
    double s_bar;
    double pi_lo;        // 1/(1+c), buying boundary in ask-price terms
    double pi_hi;        // 1/(1+c/s_bar), selling boundary in ask-price terms
    double shadow_pi_lo; // 1/(1+c), buying boundary in shadow-price terms
    double shadow_pi_hi; // 1/(1+c/((1-lambda) s_bar))

    bool degenerate() const { return params.regime == Regime::Unit; }

    /// Reflection domain of the ratio S/m: [1, s_bar] for theta < 1
    /// (with s_bar = +inf when theta = 1), [s_bar, 1] for theta > 1.
    double ratio_lo() const;
    double ratio_hi() const;
};

/// Open bracket on which f has its unique root. For theta in (0,1/2] the
/// right edge is +infinity.
struct RootBracket {
    double left;
    double right;
};

RootBracket c_bracket(const MarketParams& params);

/// The scalar function f whose root determines c: the gap between the two
/// smooth pasting conditions at s_bar. Defined on the closed-left bracket
/// [left, right); f(left) = -lambda/(1-lambda) and f increases through 0
/// exactly once. Throws UnsupportedRegime for theta = 1, DomainError for c
/// outside the bracket or a non-positive power base.
double friction_gap(double c, const MarketParams& params);

/// Reflection boundary s_bar as a function of c.
double s_bar_of_c(double c, const MarketParams& params);

/// Root-solves friction_gap to |f(c)| < 1e-12 by safeguarded secant/bisection
/// and verifies uniqueness with a 1000-point sign scan over the search
/// bracket. Throws UnsupportedRegime for theta = 1, ConvergenceError if no
/// root can be isolated.
FrictionSolution solve_c(const MarketParams& params);

/// The degenerate theta = 1 solution: c = 0, s_bar = +inf, all boundaries 1.
FrictionSolution degenerate_unit_solution(const MarketParams& params);

/// Dispatches between solve_c and degenerate_unit_solution on the regime.
FrictionSolution solve(const MarketParams& params);

/// Number of sign changes of f on an n-point grid over the bracket actually
/// searched by solve_c; a numerical stand-in for the analytic uniqueness
/// argument (expected value: exactly 1).
int bracket_sign_changes(const MarketParams& params, int grid_points);

/// Multiplicative liquidation bound 1 - lambda/(1 + c/((1-lambda) s_bar)).
/// A positive margin certifies that the shadow-market optimizer is
/// admissible, and hence growth-optimal, for this (theta, lambda).
double admissibility_margin(const FrictionSolution& sol);

/// shadow_pi_lo + shadow_pi_hi - 2 theta; zero in exact arithmetic.
double symmetry_residual(const FrictionSolution& sol);

} // namespace shadowtc
