#include "shadowtc/solver.hpp"

#include "shadowtc/errors.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>

namespace shadowtc {

namespace {

constexpr double kRootTol = 1e-12; // absolute tolerance on f(c)
constexpr int kMaxIter = 200;

double theta_of(const MarketParams& p) { return p.theta; }

// f(c) for theta != 1/2, 1. The fractional power is evaluated in log space;
// base > 0 holds throughout the open bracket.
double gap_general(double c, double theta, double lambda) {
    const double b = 2.0 * theta - 1.0 + 2.0 * c * theta;
    const double a = 2.0 - 2.0 * theta - c * (2.0 * theta - 1.0);
    const double base = c / (b * a);
    if (!(base > 0.0)) {
        throw DomainError("friction_gap: non-positive power base at c = " + std::to_string(c));
    }
    const double expo = (2.0 - 2.0 * theta) / (2.0 * theta - 1.0);
    return std::exp(expo * std::log(base)) - b * b / (1.0 - lambda);
}

double gap_half(double c, double lambda) {
    return std::exp((c * c - 1.0) / c) - c * c / (1.0 - lambda);
}

void check_in_bracket(double c, const MarketParams& p) {
    const RootBracket br = c_bracket(p);
    // closed-left with one-ulp-scale slack so that the analytic endpoint
    // value f((1-theta)/theta) = -lambda/(1-lambda) is reachable
    const double slack = 1e-12 * std::max(1.0, std::abs(br.left));
    if (!(c >= br.left - slack) || !(c < br.right)) {
        throw DomainError("friction_gap: c = " + std::to_string(c) +
                          " outside regime bracket [" + std::to_string(br.left) + ", " +
                          std::to_string(br.right) + ")");
    }
}

// Finite search bracket [a, b] with f(a) < 0 < f(b). The left start sits
// 1e-9 * width inside the bracket where f = -lambda/(1-lambda) < 0; the
// right edge is expanded geometrically for theta <= 1/2, shrunk inward from
// the finite endpoint otherwise.
struct SearchBracket {
    double a, fa;
    double b, fb;
};

SearchBracket search_bracket(const MarketParams& p) {
    const RootBracket br = c_bracket(p);
    const bool bounded = std::isfinite(br.right);
    const double width = bounded ? br.right - br.left : 1.0;

    double a = br.left + 1e-9 * width;
    double fa = friction_gap(a, p);
    for (int k = 0; fa >= 0.0 && k < 12; ++k) {
        a = br.left + (a - br.left) / 10.0;
        fa = friction_gap(a, p);
    }
    if (fa >= 0.0) {
        throw ConvergenceError("solve_c: f not negative near the left bracket endpoint");
    }

    double b, fb;
    if (bounded) {
        b = br.right - 1e-9 * width;
        fb = friction_gap(b, p);
        for (int k = 0; fb <= 0.0 && k < 40; ++k) {
            const double next = br.right - (br.right - b) / 10.0;
            if (!(next > b) || !(next < br.right)) {
                // the sign change sits closer to the endpoint than one ulp
                throw ConvergenceError(
                    "solve_c: root is not resolvable from the bracket endpoint in "
                    "double precision (theta near 1 with large lambda)");
            }
            b = next;
            fb = friction_gap(b, p);
        }
    } else {
        b = br.left + 1.0;
        fb = friction_gap(b, p);
        int doublings = 0;
        while (fb <= 0.0 && doublings < 60) {
            b = br.left + 2.0 * (b - br.left);
            fb = friction_gap(b, p);
            ++doublings;
        }
    }
    if (fb <= 0.0) {
        throw ConvergenceError("solve_c: no sign change found within the regime bracket");
    }
    return SearchBracket{a, fa, b, fb};
}

// Safeguarded root loop: alternates a secant step with a bisection step, so
// the interval provably halves every other iteration while the secant gives
// superlinear convergence near the root. Refines until the bracket is
// exhausted in double precision (or |f| reaches evaluation noise), then
// returns the iterate with the smallest |f|; the kRootTol contract is
// enforced at the end.
double refine_root(const MarketParams& p, SearchBracket s) {
    constexpr double kNoiseFloor = 1e-15;
    double best = s.a;
    double best_f = s.fa;
    const auto consider = [&](double c, double fc) {
        if (std::abs(fc) < std::abs(best_f)) {
            best = c;
            best_f = fc;
        }
    };
    consider(s.b, s.fb);

    for (int iter = 0; iter < kMaxIter; ++iter) {
        if (std::abs(best_f) < kNoiseFloor) break;
        double cand;
        if (iter % 2 == 0 && s.fb != s.fa) {
            cand = s.b - s.fb * (s.b - s.a) / (s.fb - s.fa);
            if (!(cand > s.a && cand < s.b)) cand = 0.5 * (s.a + s.b);
        } else {
            cand = 0.5 * (s.a + s.b);
        }
        if (!(cand > s.a && cand < s.b)) break; // interval exhausted in double precision
        const double fc = friction_gap(cand, p);
        consider(cand, fc);
        if (fc < 0.0) {
            s.a = cand;
            s.fa = fc;
        } else {
            s.b = cand;
            s.fb = fc;
        }
    }
    if (std::abs(best_f) < kRootTol) return best;
    char msg[160];
    std::snprintf(msg, sizeof(msg),
                  "solve_c: |f| stalled at %.3e above the %.0e tolerance%s", std::abs(best_f),
                  kRootTol,
                  std::abs(2.0 * p.theta - 1.0) < 1e-3
                      ? " (the fractional power is ill-conditioned this close to theta = 1/2)"
                      : "");
    throw ConvergenceError(msg);
}

int count_sign_changes(const MarketParams& p, const SearchBracket& s, int n) {
    int changes = 0;
    double prev = s.fa;
    for (int i = 1; i < n; ++i) {
        const double c = s.a + (s.b - s.a) * static_cast<double>(i) / (n - 1);
        const double f = friction_gap(c, p);
        if (prev < 0.0 && f >= 0.0) ++changes;
        if (prev >= 0.0 && f < 0.0) ++changes;
        prev = f;
    }
    return changes;
}

FrictionSolution assemble(const MarketParams& p, double c, double s_bar) {
    const double lambda = p.lambda;
    FrictionSolution sol;
    sol.params = p;
    sol.c = c;
    sol.s_bar = s_bar;
    sol.pi_lo = 1.0 / (1.0 + c);
    sol.pi_hi = 1.0 / (1.0 + c / s_bar);
    sol.shadow_pi_lo = sol.pi_lo;
    sol.shadow_pi_hi = 1.0 / (1.0 + c / ((1.0 - lambda) * s_bar));
    return sol;
}

} // namespace

double FrictionSolution::ratio_lo() const {
    return params.theta > 1.0 ? s_bar : 1.0;
}

double FrictionSolution::ratio_hi() const {
    if (params.regime == Regime::Unit) return std::numeric_limits<double>::infinity();
    return params.theta > 1.0 ? 1.0 : s_bar;
}

RootBracket c_bracket(const MarketParams& params) {
    const double theta = theta_of(params);
    if (params.regime == Regime::Unit) {
        throw UnsupportedRegime("c_bracket: theta = 1 has no root bracket");
    }
    const double cbar = (1.0 - theta) / theta;
    if (theta <= 0.5) return RootBracket{cbar, std::numeric_limits<double>::infinity()};
    if (theta < 1.0) return RootBracket{cbar, (1.0 - theta) / (theta - 0.5)};
    return RootBracket{cbar, 0.0};
}

double friction_gap(double c, const MarketParams& params) {
    if (params.regime == Regime::Unit) {
        throw UnsupportedRegime("friction_gap: undefined for theta = 1");
    }
    check_in_bracket(c, params);
    if (params.regime == Regime::Half) return gap_half(c, params.lambda);
    return gap_general(c, params.theta, params.lambda);
}

double s_bar_of_c(double c, const MarketParams& params) {
    if (params.regime == Regime::Unit) {
        throw UnsupportedRegime("s_bar_of_c: undefined for theta = 1");
    }
    const double theta = params.theta;
    if (params.regime == Regime::Half) return std::exp((c * c - 1.0) / c);
    const double b = 2.0 * theta - 1.0 + 2.0 * c * theta;
    const double a = 2.0 - 2.0 * theta - c * (2.0 * theta - 1.0);
    const double base = c / (b * a);
    if (!(base > 0.0)) {
        throw DomainError("s_bar_of_c: non-positive power base at c = " + std::to_string(c));
    }
    return std::exp(std::log(base) / (2.0 * theta - 1.0));
}

FrictionSolution solve_c(const MarketParams& params) {
    if (params.regime == Regime::Unit) {
        throw UnsupportedRegime("solve_c: theta = 1 is degenerate; use degenerate_unit_solution");
    }
    const SearchBracket s = search_bracket(params);
    const double c = refine_root(params, s);
    if (count_sign_changes(params, s, 1000) != 1) {
        throw ConvergenceError("solve_c: sign scan did not find exactly one crossing");
    }
    const double s_bar = s_bar_of_c(c, params);

    const bool high = params.theta > 1.0;
    if (high ? !(s_bar > 0.0 && s_bar < 1.0) : !(s_bar > 1.0)) {
        throw ConvergenceError("solve_c: s_bar violates its range invariant");
    }
    const double ratio = c / s_bar;
    if (high ? !(ratio > -1.0 && ratio < 0.0) : !(ratio > 0.0)) {
        throw ConvergenceError("solve_c: c/s_bar violates its range invariant");
    }
    return assemble(params, c, s_bar);
}

FrictionSolution degenerate_unit_solution(const MarketParams& params) {
    if (params.regime != Regime::Unit) {
        throw DomainError("degenerate_unit_solution: regime is not theta = 1");
    }
    FrictionSolution sol;
    sol.params = params;
    sol.c = 0.0;
    sol.s_bar = std::numeric_limits<double>::infinity();
    sol.pi_lo = sol.pi_hi = 1.0;
    sol.shadow_pi_lo = sol.shadow_pi_hi = 1.0;
    return sol;
}

FrictionSolution solve(const MarketParams& params) {
    if (params.regime == Regime::Unit) return degenerate_unit_solution(params);
    return solve_c(params);
}

int bracket_sign_changes(const MarketParams& params, int grid_points) {
    if (grid_points < 2) throw DomainError("bracket_sign_changes: need at least 2 grid points");
    return count_sign_changes(params, search_bracket(params), grid_points);
}

double admissibility_margin(const FrictionSolution& sol) {
    return 1.0 - sol.params.lambda * sol.shadow_pi_hi;
}

double symmetry_residual(const FrictionSolution& sol) {
    return sol.shadow_pi_lo + sol.shadow_pi_hi - 2.0 * sol.params.theta;
}

} // namespace shadowtc
