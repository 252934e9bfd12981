#pragma once

#include "shadowtc/series.hpp"

namespace shadowtc {

/// Fractional Taylor expansions in t = lambda^{1/3} of the solved constants
/// and derived quantities. Coefficients are real numbers for the given
/// numeric theta (the underlying rational functions of theta are not built
/// symbolically). Orders are capped at 12; the default used by the CLI is 9.
///
/// Construction follows the inversion pipeline: expand s_bar = F(c) around
/// cbar = (1-theta)/theta, divide lambda s_bar = s_bar - g(s_bar) by its
/// leading cubic factor, take the real cube root and invert the resulting
/// series. expand_ansatz implements the independent coefficient-comparison
/// route and serves as its oracle.

/// c(lambda) as a series in t; constant term (1-theta)/theta.
FracSeries expand_c(double theta, int order);

/// s_bar(lambda) as a series in t; constant term 1.
FracSeries expand_s_bar(double theta, int order);

struct BoundaryExpansion {
    FracSeries lo;    // 1/(1+c)
    FracSeries hi;    // 1/(1+c/s_bar)
    FracSeries width; // hi - lo
};

/// No-trade boundaries in ask-price terms; all constant terms equal theta
/// and the t^2 coefficients vanish.
BoundaryExpansion expand_boundaries(double theta, int order);

/// Optimal growth rate; constant term mu^2/(2 sigma^2) with mu = theta
/// sigma^2. The t and t^3 coefficients vanish; the t^2 coefficient is
/// -(3 sigma^3 theta^2 (1-theta)^2 / sqrt(128))^{2/3}.
FracSeries expand_growth(double theta, double sigma, int order);

/// No-trade boundaries in mid-price terms: series in lambda_check^{1/3}
/// where lambda_check = lambda/(2-lambda) is the symmetric half-spread.
BoundaryExpansion expand_midprice(double theta, int order);

struct AnsatzExpansion {
    FracSeries s_bar;
    FracSeries c;
};

/// Coefficient-comparison route: inserts the ansatz into the smooth pasting
/// equations g(s_bar) = (1-lambda) s_bar and g'(s_bar) = 1-lambda and solves
/// order by order. Independent of the inversion pipeline above.
AnsatzExpansion expand_ansatz(double theta, int order);

} // namespace shadowtc
