#include "shadowtc/shadow.hpp"

#include "shadowtc/errors.hpp"

#include <cmath>
#include <string>

namespace shadowtc {

ShadowTransform::ShadowTransform(FrictionSolution sol) : sol_(sol) {
    const double theta = sol_.params.theta;
    lo_ = sol_.ratio_lo();
    hi_ = sol_.ratio_hi();
    two_theta_ = 2.0 * theta;
    if (sol_.params.regime == Regime::Unit) {
        branch_ = Branch::Identity;
        lo_ = 0.0;
    } else if (sol_.params.regime == Regime::Half) {
        branch_ = Branch::Log;
    } else {
        branch_ = Branch::General;
        const double c = sol_.c;
        b_ = 2.0 * theta - 1.0 + 2.0 * c * theta;
        a_ = 2.0 - 2.0 * theta - c * (2.0 * theta - 1.0);
        const double k = (2.0 * theta - 1.0) * (1.0 + c);
        k2_ = k * k;
    }
}

bool ShadowTransform::contains(double s) const {
    constexpr double slack = 1e-12;
    if (!(s > 0.0)) return false;
    if (branch_ == Branch::Identity) return true;
    return s >= lo_ * (1.0 - slack) && s <= hi_ * (1.0 + slack);
}

void ShadowTransform::check_domain(double s) const {
    if (!contains(s)) {
        throw DomainError("ratio s = " + std::to_string(s) + " outside the reflection domain [" +
                          std::to_string(lo_) + ", " + std::to_string(hi_) + "]");
    }
}

double ShadowTransform::g(double s) const {
    check_domain(s);
    switch (branch_) {
    case Branch::Identity:
        return s;
    case Branch::Log: {
        const double c = sol_.c;
        const double l = std::log(s);
        return ((c + 1.0) + c * l) / ((c + 1.0) - l);
    }
    case Branch::General:
    default: {
        // rational form with the dominant s^{2 theta} factor scaled out:
        // g = (B - c u)/(u - A), u = s^{1-2 theta}
        const double u = std::pow(s, 1.0 - two_theta_);
        return (b_ - sol_.c * u) / (u - a_);
    }
    }
}

double ShadowTransform::g_prime(double s) const {
    check_domain(s);
    switch (branch_) {
    case Branch::Identity:
        return 1.0;
    case Branch::Log: {
        const double c = sol_.c;
        const double d = (c + 1.0) - std::log(s);
        return (c + 1.0) * (c + 1.0) / (s * d * d);
    }
    case Branch::General:
    default: {
        const double u = std::pow(s, 1.0 - two_theta_);
        const double d = u - a_;
        return k2_ * std::pow(s, -two_theta_) / (d * d);
    }
    }
}

double ShadowTransform::g_second(double s) const {
    check_domain(s);
    switch (branch_) {
    case Branch::Identity:
        return 0.0;
    case Branch::Log: {
        const double c = sol_.c;
        const double l = std::log(s);
        const double d = (c + 1.0) - l;
        return (c + 1.0) * (c + 1.0) * (1.0 - c + l) / (s * s * d * d * d);
    }
    case Branch::General:
    default: {
        const double u = std::pow(s, 1.0 - two_theta_);
        const double d = u - a_;
        return k2_ * std::pow(s, -two_theta_ - 1.0) * (two_theta_ * a_ + (two_theta_ - 2.0) * u) /
               (d * d * d);
    }
    }
}

double ShadowTransform::ode_residual(double s) const {
    const double gv = g(s);
    const double gp = g_prime(s);
    const double gs = g_second(s);
    const double theta = sol_.params.theta;
    return gs - (2.0 * gp * gp / (sol_.c + gv) - 2.0 * theta * gp / s);
}

double ShadowTransform::shadow_price(double S, double m) const {
    if (!(S > 0.0) || !(m > 0.0)) {
        throw DomainError("shadow_price: S and m must be positive");
    }
    return m * g(S / m);
}

ShadowTransform::DriftVol ShadowTransform::drift_vol(double s) const {
    const double gv = g(s);
    const double gp = g_prime(s);
    const double sigma = sol_.params.sigma;
    const double mu_tilde = sigma * sigma * gp * gp * s * s / (gv * (sol_.c + gv));
    const double sigma_tilde = sigma * gp * s / gv;
    return DriftVol{mu_tilde, sigma_tilde};
}

double ShadowTransform::merton_ratio(double s) const {
    return 1.0 / (1.0 + sol_.c / g(s));
}

} // namespace shadowtc
