#pragma once

#include "shadowtc/solver.hpp"

namespace shadowtc {

/// Long-run growth rate delta computed two ways, plus the frictionless
/// Merton rate and the stationary-density normalizer of the reflected ratio.
struct GrowthReport {
    double delta_closed;
    double delta_quadrature;
    double delta_frictionless; // mu^2 / (2 sigma^2)
    double stationary_normalizer;
};

/// Stationary density nu of S/m on the reflection domain. Throws
/// UnsupportedRegime for theta = 1 (the ratio is not positive recurrent),
/// DomainError for s outside the domain.
double stationary_density(double s, const FrictionSolution& sol);

/// Normalizing constant of nu ((2 theta - 1)/(s_bar^{2 theta - 1} - 1) and
/// its theta = 1/2, theta > 1 counterparts).
double stationary_normalizer(const FrictionSolution& sol);

/// Closed-form optimal growth rate. For theta = 1 returns sigma^2/2.
double growth_rate_closed(const FrictionSolution& sol, double sigma);

/// Independent oracle: adaptive Gauss-Kronrod quadrature of
/// integral of mu_tilde^2/(2 sigma_tilde^2) against nu over the domain.
/// Throws QuadratureError if the error estimate exceeds tolerance.
double growth_rate_quadrature(const FrictionSolution& sol, double sigma);

GrowthReport growth_report(const FrictionSolution& sol, double sigma);

} // namespace shadowtc
