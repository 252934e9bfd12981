#include "shadowtc/growth.hpp"

#include "shadowtc/errors.hpp"
#include "shadowtc/shadow.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <iostream>
#include <string>

namespace shadowtc {

namespace {

void check_domain(double s, const FrictionSolution& sol) {
    constexpr double slack = 1e-12;
    const double lo = sol.ratio_lo();
    const double hi = sol.ratio_hi();
    if (!(s >= lo * (1.0 - slack) && s <= hi * (1.0 + slack))) {
        throw DomainError("stationary_density: s = " + std::to_string(s) +
                          " outside the reflection domain");
    }
}

} // namespace

double stationary_normalizer(const FrictionSolution& sol) {
    const double theta = sol.params.theta;
    if (sol.params.regime == Regime::Unit) {
        throw UnsupportedRegime("stationary_normalizer: no stationary law for theta = 1");
    }
    if (sol.params.regime == Regime::Half) return 1.0 / std::log(sol.s_bar);
    const double p = std::pow(sol.s_bar, 2.0 * theta - 1.0);
    if (theta > 1.0) return (2.0 * theta - 1.0) / (1.0 - p);
    return (2.0 * theta - 1.0) / (p - 1.0);
}

double stationary_density(double s, const FrictionSolution& sol) {
    check_domain(s, sol);
    const double theta = sol.params.theta;
    if (sol.params.regime == Regime::Half) return stationary_normalizer(sol) / s;
    return stationary_normalizer(sol) * std::pow(s, 2.0 * theta - 2.0);
}

double growth_rate_closed(const FrictionSolution& sol, double sigma) {
    const double theta = sol.params.theta;
    const double c = sol.c;
    const double s_bar = sol.s_bar;
    if (sol.params.regime == Regime::Unit) return 0.5 * sigma * sigma;
    if (sol.params.regime == Regime::Half) {
        return sigma * sigma / (2.0 * (1.0 + c) * (1.0 + c - std::log(s_bar)));
    }
    if (std::abs(2.0 * theta - 1.0) < 1e-6) {
        std::cerr << "shadowtc: warning: theta within 1e-6 of 1/2; the general growth "
                     "branch is ill-conditioned here, compare against the theta = 1/2 formula\n";
    }
    const double weight = -2.0 - c + 2.0 * theta * (1.0 + c);
    return (2.0 * theta - 1.0) * sigma * sigma * s_bar /
           (2.0 * (1.0 + c) * (s_bar + weight * std::pow(s_bar, 2.0 * theta)));
}

double growth_rate_quadrature(const FrictionSolution& sol, double sigma) {
    if (sol.params.regime == Regime::Unit) return 0.5 * sigma * sigma;

    // The integrand mu_tilde^2/(2 sigma_tilde^2) reduces to
    // sigma^2 g'(s)^2 s^2 / (2 (c+g(s))^2).
    MarketParams p = sol.params;
    p.sigma = sigma;
    p.mu = p.theta * sigma * sigma;
    FrictionSolution scaled = sol;
    scaled.params = p;
    const ShadowTransform transform(scaled);
    const double c = sol.c;
    const auto integrand = [&](double s) {
        const double gp = transform.g_prime(s);
        const double cg = c + transform.g(s);
        return sigma * sigma * gp * gp * s * s / (2.0 * cg * cg) * stationary_density(s, sol);
    };

    double err = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        integrand, sol.ratio_lo(), sol.ratio_hi(), 15, 1e-13, &err);
    if (!(err < 1e-10 * std::max(1.0, std::abs(value)))) {
        throw QuadratureError("growth_rate_quadrature: error estimate " + std::to_string(err) +
                              " above tolerance");
    }
    return value;
}

GrowthReport growth_report(const FrictionSolution& sol, double sigma) {
    const double theta = sol.params.theta;
    GrowthReport r;
    r.delta_closed = growth_rate_closed(sol, sigma);
    r.delta_quadrature = growth_rate_quadrature(sol, sigma);
    r.delta_frictionless = 0.5 * theta * theta * sigma * sigma;
    r.stationary_normalizer =
        sol.params.regime == Regime::Unit ? 0.0 : stationary_normalizer(sol);
    return r;
}

} // namespace shadowtc
