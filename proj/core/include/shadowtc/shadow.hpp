#pragma once

#include "shadowtc/solver.hpp"

namespace shadowtc {

/// Closed-form evaluator for the transform g that maps the reflected ratio
/// S/m to the shadow price S_tilde = m g(S/m). g solves
///     g'' = 2 g'^2/(c+g) - 2 theta g'/s
/// with smooth pasting g(1) = g'(1) = 1, g(s_bar) = (1-lambda) s_bar,
/// g'(s_bar) = 1-lambda. Immutable after construction; evaluations are pure.
class ShadowTransform {
public:
    explicit ShadowTransform(FrictionSolution sol);

    const FrictionSolution& solution() const { return sol_; }
    double domain_lo() const { return lo_; }
    double domain_hi() const { return hi_; }

    /// Membership with 1e-12 relative slack (absorbs simulator round-off).
    bool contains(double s) const;

    double g(double s) const;
    double g_prime(double s) const;
    double g_second(double s) const;

    /// g''(s) - [2 g'(s)^2/(c+g(s)) - 2 theta g'(s)/s]; zero up to round-off.
    double ode_residual(double s) const;

    /// m g(S/m); lies in the bid-ask spread [(1-lambda) S, S].
    double shadow_price(double S, double m) const;

    struct DriftVol {
        double mu_tilde;
        double sigma_tilde;
    };

    /// Drift and diffusion coefficients of dS_tilde/S_tilde at ratio s.
    DriftVol drift_vol(double s) const;

    /// Local mean-variance ratio mu_tilde/sigma_tilde^2 = 1/(1 + c/g(s)):
    /// the optimal stock fraction in shadow terms when the ratio sits at s.
    double merton_ratio(double s) const;

private:
    enum class Branch { General, Log, Identity };

    void check_domain(double s) const;

    FrictionSolution sol_;
    Branch branch_;
    double lo_ = 0.0;
    double hi_ = 0.0;
    // cached constants of the general branch
    double a_ = 0.0;        // 2 - 2 theta - c (2 theta - 1)
    double b_ = 0.0;        // 2 theta - 1 + 2 c theta
    double k2_ = 0.0;       // ((2 theta - 1)(1 + c))^2
    double two_theta_ = 0.0;
};

} // namespace shadowtc
