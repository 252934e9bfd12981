#include "shadowtc/asymptotics.hpp"

#include "shadowtc/errors.hpp"
#include "shadowtc/model.hpp"
#include "shadowtc/solver.hpp"

#include <array>
#include <cmath>
#include <string>

namespace shadowtc {

namespace {

constexpr int kMaxOrder = 12;

void check_theta_order(double theta, int order) {
    if (!(theta > 0.0) || !std::isfinite(theta)) {
        throw DomainError("expansion: theta must be positive and finite");
    }
    if (classify_theta(theta) == Regime::Unit) {
        throw UnsupportedRegime("expansion: theta = 1 has no fractional expansion");
    }
    if (order < 1 || order > kMaxOrder) {
        throw DomainError("expansion: order must lie in [1, " + std::to_string(kMaxOrder) + "]");
    }
}

bool is_half(double theta) { return classify_theta(theta) == Regime::Half; }

struct Pipeline {
    FracSeries c_t;    // c as series in t = lambda^{1/3}
    FracSeries sbar_t; // s_bar as series in t
};

// Series in z = c - cbar of s_bar(c) and of g(s_bar(c); c). The latter has
// the closed form c B/A (resp. c^2 for theta = 1/2), valid before imposing
// the root condition.
struct ZSeries {
    FracSeries sbar_z;
    FracSeries gsbar_z;
};

ZSeries z_series(double theta, int zorder) {
    const double cbar = (1.0 - theta) / theta;
    const FracSeries c_z = FracSeries::identity(zorder) + cbar;
    if (is_half(theta)) {
        const FracSeries log_sbar = c_z - recip(c_z); // (c^2-1)/c
        return ZSeries{exp(log_sbar), c_z * c_z};
    }
    const FracSeries b_z = 2.0 * theta * c_z + (2.0 * theta - 1.0);
    const FracSeries a_z = (2.0 - 2.0 * theta) - (2.0 * theta - 1.0) * c_z;
    const FracSeries ratio = c_z * recip(b_z * a_z);
    return ZSeries{pow_real(ratio, 1.0 / (2.0 * theta - 1.0)), c_z * b_z * recip(a_z)};
}

Pipeline run_pipeline(double theta, int order) {
    const int zorder = order + 2;
    const auto [sbar_z, gsbar_z] = z_series(theta, zorder);

    // lambda s_bar = s_bar - g(s_bar) = (4 theta^4 / 3(1-theta)^2) z^3 (1 + O(z))
    const FracSeries gap_z = sbar_z - gsbar_z;
    const FracSeries cubic_factor = shift_down(gap_z, 3, 1e-7);
    if (!(cubic_factor.coeff(0) > 0.0)) {
        throw ConvergenceError("expansion pipeline: leading cubic coefficient not positive");
    }
    // t = lambda^{1/3} = z * (cubic_factor / s_bar)^{1/3} =: phi(z)
    const FracSeries ratio = cubic_factor * recip(sbar_z.truncated(zorder - 3));
    const FracSeries phi = shift_up(pow_real(ratio, 1.0 / 3.0), 1);

    const FracSeries z_t = lagrange_invert(phi);
    const double cbar = (1.0 - theta) / theta;
    return Pipeline{z_t + cbar, compose(sbar_z.truncated(order), z_t)};
}

FracSeries lambda_series(int order) {
    FracSeries lam(order);
    if (order >= 3) lam.set_coeff(3, 1.0);
    return lam;
}

BoundaryExpansion boundaries_from(const FracSeries& c_t, const FracSeries& sbar_t) {
    const FracSeries lo = recip(c_t + 1.0);
    const FracSeries hi = recip(c_t * recip(sbar_t) + 1.0);
    return BoundaryExpansion{lo, hi, hi - lo};
}

// Residual series of the two smooth pasting equations for ansatz
// coefficients A (s_bar) and B (c), at series order `ord`.
struct AnsatzResiduals {
    FracSeries r1; // g(s_bar) - (1-lambda) s_bar
    FracSeries r2; // g'(s_bar) - (1-lambda)
};

AnsatzResiduals ansatz_residuals(double theta, const std::vector<double>& a,
                                 const std::vector<double>& b, int ord) {
    FracSeries sbar = FracSeries::constant(1.0, ord);
    FracSeries c = FracSeries::constant((1.0 - theta) / theta, ord);
    for (int k = 1; k <= ord && k < static_cast<int>(a.size()); ++k) {
        sbar.set_coeff(k, a[static_cast<std::size_t>(k)]);
        c.set_coeff(k, b[static_cast<std::size_t>(k)]);
    }
    FracSeries g(ord), gp(ord);
    if (is_half(theta)) {
        const FracSeries l = log(sbar);
        const FracSeries d = c + 1.0 - l;
        const FracSeries dinv = recip(d);
        g = (c + 1.0 + c * l) * dinv;
        gp = (c + 1.0) * (c + 1.0) * recip(sbar) * dinv * dinv;
    } else {
        const FracSeries u = pow_real(sbar, 1.0 - 2.0 * theta);
        const FracSeries bs = 2.0 * theta * c + (2.0 * theta - 1.0);
        const FracSeries as = (2.0 - 2.0 * theta) - (2.0 * theta - 1.0) * c;
        const FracSeries dinv = recip(u - as);
        g = (bs - c * u) * dinv;
        const FracSeries k1 = (2.0 * theta - 1.0) * (c + 1.0);
        gp = k1 * k1 * pow_real(sbar, -2.0 * theta) * dinv * dinv;
    }
    const FracSeries one_minus_lambda = 0.0 - lambda_series(ord) + 1.0;
    return AnsatzResiduals{g - one_minus_lambda * sbar, gp - one_minus_lambda};
}

} // namespace

FracSeries expand_c(double theta, int order) {
    check_theta_order(theta, order);
    return run_pipeline(theta, order).c_t;
}

FracSeries expand_s_bar(double theta, int order) {
    check_theta_order(theta, order);
    return run_pipeline(theta, order).sbar_t;
}

BoundaryExpansion expand_boundaries(double theta, int order) {
    check_theta_order(theta, order);
    const Pipeline p = run_pipeline(theta, order);
    return boundaries_from(p.c_t, p.sbar_t);
}

FracSeries expand_growth(double theta, double sigma, int order) {
    check_theta_order(theta, order);
    if (!(sigma > 0.0)) throw DomainError("expand_growth: sigma must be positive");
    const Pipeline p = run_pipeline(theta, order);
    const double s2 = sigma * sigma;
    if (is_half(theta)) {
        const FracSeries den = (p.c_t + 1.0) * (p.c_t + 1.0 - log(p.sbar_t));
        return 0.5 * s2 * recip(den);
    }
    const FracSeries weight = 2.0 * theta * (p.c_t + 1.0) - p.c_t - 2.0;
    const FracSeries den = (p.c_t + 1.0) * (p.sbar_t + weight * pow_real(p.sbar_t, 2.0 * theta));
    return 0.5 * (2.0 * theta - 1.0) * s2 * p.sbar_t * recip(den);
}

BoundaryExpansion expand_midprice(double theta, int order) {
    check_theta_order(theta, order);
    const Pipeline p = run_pipeline(theta, order);

    // t = lambda^{1/3} as a series in tc = lambda_check^{1/3}:
    // lambda = 2 lambda_check/(1+lambda_check), so t = 2^{1/3} tc (1+tc^3)^{-1/3}.
    FracSeries one_plus(order);
    one_plus.set_coeff(0, 1.0);
    if (order >= 3) one_plus.set_coeff(3, 1.0);
    const FracSeries w = pow_real(one_plus, -1.0 / 3.0);
    const FracSeries t_of_tc = std::cbrt(2.0) * shift_up(w.truncated(order - 1), 1);

    const FracSeries c_tc = compose(p.c_t, t_of_tc);
    const FracSeries sbar_tc = compose(p.sbar_t, t_of_tc);

    // boundaries of pi_check = 1/(1 + (m/S) 2c/(2-lambda_check))
    FracSeries two_minus(order);
    two_minus.set_coeff(0, 2.0);
    if (order >= 3) two_minus.set_coeff(3, -1.0);
    const FracSeries v = 2.0 * c_tc * recip(two_minus);
    const FracSeries lo = recip(v + 1.0);
    const FracSeries hi = recip(v * recip(sbar_tc) + 1.0);
    return BoundaryExpansion{lo, hi, hi - lo};
}

AnsatzExpansion expand_ansatz(double theta, int order) {
    check_theta_order(theta, order);
    const int ord = order + 2;
    std::vector<double> a(static_cast<std::size_t>(order) + 1, 0.0);
    std::vector<double> b(static_cast<std::size_t>(order) + 1, 0.0);

    // Seed for the leading coefficients from the exact solver at a small
    // lambda; Newton then sharpens them on the order-3/order-2 equations.
    const double lam0 = 1e-6;
    const double t0 = std::cbrt(lam0);
    const FrictionSolution seed = solve(params_from_theta(theta, 1.0, lam0));
    a[1] = (seed.s_bar - 1.0) / t0;
    b[1] = (seed.c - (1.0 - theta) / theta) / t0;

    for (int j = 1; j <= order; ++j) {
        const auto eval = [&](double aj, double bj) {
            a[static_cast<std::size_t>(j)] = aj;
            b[static_cast<std::size_t>(j)] = bj;
            const AnsatzResiduals r = ansatz_residuals(theta, a, b, ord);
            return std::array<double, 2>{r.r1.coeff(j + 2), r.r2.coeff(j + 1)};
        };
        double aj = a[static_cast<std::size_t>(j)];
        double bj = b[static_cast<std::size_t>(j)];
        double best_a = aj, best_b = bj;
        double r0 = -1.0, best_r = -1.0;
        for (int it = 0; it < 60; ++it) {
            const auto f0 = eval(aj, bj);
            const double r = std::abs(f0[0]) + std::abs(f0[1]);
            if (r0 < 0.0) r0 = r;
            if (best_r < 0.0 || r < best_r) {
                best_r = r;
                best_a = aj;
                best_b = bj;
            }
            // residual coefficients of order j scale with the series
            // coefficients themselves, so convergence is relative to the
            // starting residual of this order
            if (r <= 1e-13 * std::max(1.0, r0)) break;
            const double ha = 1e-6 * std::max(1.0, std::abs(aj));
            const double hb = 1e-6 * std::max(1.0, std::abs(bj));
            const auto fa_p = eval(aj + ha, bj);
            const auto fa_m = eval(aj - ha, bj);
            const auto fb_p = eval(aj, bj + hb);
            const auto fb_m = eval(aj, bj - hb);
            const double j00 = (fa_p[0] - fa_m[0]) / (2.0 * ha);
            const double j10 = (fa_p[1] - fa_m[1]) / (2.0 * ha);
            const double j01 = (fb_p[0] - fb_m[0]) / (2.0 * hb);
            const double j11 = (fb_p[1] - fb_m[1]) / (2.0 * hb);
            const double det = j00 * j11 - j01 * j10;
            if (det == 0.0) {
                throw ConvergenceError("expand_ansatz: singular system at order " +
                                       std::to_string(j));
            }
            aj -= (f0[0] * j11 - f0[1] * j01) / det;
            bj -= (f0[1] * j00 - f0[0] * j10) / det;
        }
        if (!(best_r <= 1e-10 * std::max(1.0, r0))) {
            throw ConvergenceError("expand_ansatz: Newton did not converge at order " +
                                   std::to_string(j));
        }
        a[static_cast<std::size_t>(j)] = best_a;
        b[static_cast<std::size_t>(j)] = best_b;
    }

    FracSeries sbar(order), c(order);
    sbar.set_coeff(0, 1.0);
    c.set_coeff(0, (1.0 - theta) / theta);
    for (int k = 1; k <= order; ++k) {
        sbar.set_coeff(k, a[static_cast<std::size_t>(k)]);
        c.set_coeff(k, b[static_cast<std::size_t>(k)]);
    }
    return AnsatzExpansion{sbar, c};
}

} // namespace shadowtc
