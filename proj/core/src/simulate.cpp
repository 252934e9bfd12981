#include "shadowtc/simulate.hpp"

#include "shadowtc/errors.hpp"
#include "shadowtc/shadow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <ostream>
#include <random>
#include <thread>

namespace shadowtc {

namespace {

struct PathStats {
    double log_v = 0.0;
    double log_v_tilde = 0.0;
    double max_spread = 0.0;
    double max_rec = 0.0;
    double max_pi = 0.0;
    double max_order = 0.0;
    double interior_trade = 0.0;
    double total_trade = 0.0;
    double selffin = 0.0;
    long long flips = 0;
    std::vector<std::uint64_t> hist;
    PathRecord record;
};

struct RunContext {
    const FrictionSolution& sol;
    const ShadowTransform& transform;
    double lo, hi;
    bool high_theta;
    bool degenerate;
    double margin;
    long long n_steps;
    double drift_dt, sig_sqdt;
};

void validate_config(const PathConfig& cfg) {
    if (!(cfg.horizon > 0.0)) throw DomainError("PathConfig: horizon must be positive");
    if (!(cfg.dt > 0.0) || cfg.dt > cfg.horizon) {
        throw DomainError("PathConfig: need 0 < dt <= horizon");
    }
    if (cfg.n_paths < 1) throw DomainError("PathConfig: n_paths must be >= 1");
    if (cfg.hist_bins < 1) throw DomainError("PathConfig: hist_bins must be >= 1");
    if (!(cfg.initial_wealth > 0.0)) throw DomainError("PathConfig: initial wealth must be positive");
}

void simulate_one_path(const RunContext& ctx, const PathConfig& cfg, int path_index,
                       PathStats& out) {
    const FrictionSolution& sol = ctx.sol;
    const double lambda = sol.params.lambda;
    const double c = sol.c;
    const double x = cfg.initial_wealth;

    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed & 0xffffffffu),
                      static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(path_index)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> gauss(0.0, 1.0);

    double S = 1.0;
    double m = 1.0;
    double ratio = 1.0;
    // time-0 jump (x, 0) -> (cx/(c+1), x/(c+1)) executed at S_tilde_0 = S_0 = 1
    double phi = x / (c + 1.0);
    double phi0 = c * m * phi;
    int regime = 0; // 0: tracking at ratio 1, 1: tracking at s_bar

    double s_tilde = ctx.transform.shadow_price(S, m);
    double v_tilde = phi0 + phi * s_tilde;
    double v = phi0 + (phi >= 0.0 ? phi * (1.0 - lambda) * S : phi * S);

    out.hist.assign(ctx.degenerate ? 0 : static_cast<std::size_t>(cfg.hist_bins), 0);
    const double bin_scale =
        ctx.degenerate ? 0.0 : static_cast<double>(cfg.hist_bins) / (ctx.hi - ctx.lo);

    auto record_step = [&](double t) {
        PathRecord& r = out.record;
        r.times.push_back(t);
        r.S.push_back(S);
        r.m.push_back(m);
        r.S_tilde.push_back(s_tilde);
        r.phi0.push_back(phi0);
        r.phi.push_back(phi);
        r.V.push_back(v);
        r.V_tilde.push_back(v_tilde);
        r.regime.push_back(static_cast<std::uint8_t>(regime));
    };
    if (cfg.record_full_paths) {
        const std::size_t n = static_cast<std::size_t>(ctx.n_steps) + 1;
        out.record.times.reserve(n);
        out.record.S.reserve(n);
        out.record.m.reserve(n);
        out.record.S_tilde.reserve(n);
        out.record.phi0.reserve(n);
        out.record.phi.reserve(n);
        out.record.V.reserve(n);
        out.record.V_tilde.reserve(n);
        out.record.regime.reserve(n);
        record_step(0.0);
    }

    for (long long step = 1; step <= ctx.n_steps; ++step) {
        S *= std::exp(ctx.drift_dt + ctx.sig_sqdt * gauss(rng));
        const double raw = S / m;
        const double phi_prev = phi;
        const double v_tilde_prev = v_tilde;
        const double s_tilde_prev = s_tilde;

        if (raw > ctx.hi || raw < ctx.lo) {
            const bool hit_hi = raw > ctx.hi;
            ratio = hit_hi ? ctx.hi : ctx.lo;
            const double m_new = S / ratio;
            const bool at_one = ctx.high_theta ? hit_hi : !hit_hi;
            const auto [p0, p1] = portfolio_step(phi0, phi, m, m_new, at_one, sol);
            phi0 = p0;
            phi = p1;
            const int side = at_one ? 0 : 1;
            if (side != regime) {
                ++out.flips;
                regime = side;
            }
            m = m_new;

            const double dphi = std::abs(phi - phi_prev);
            out.total_trade += dphi;
            if (std::abs(ratio - ctx.lo) > 1e-9 * ctx.lo &&
                (ctx.degenerate || std::abs(ratio - ctx.hi) > 1e-9 * ctx.hi)) {
                out.interior_trade += dphi;
            }
        } else {
            ratio = raw;
        }

        s_tilde = m * ctx.transform.g(ratio);
        v_tilde = phi0 + phi * s_tilde;
        v = phi0 + (phi >= 0.0 ? phi * (1.0 - lambda) * S : phi * S);
        if (!(v_tilde > 0.0) || !(v > 0.0)) {
            throw SimulationError("wealth became non-positive at step " + std::to_string(step) +
                                  " of path " + std::to_string(path_index));
        }

        // pathwise invariants
        const double spread_hi = (s_tilde - S) / S;
        const double spread_lo = ((1.0 - lambda) * S - s_tilde) / S;
        out.max_spread = std::max({out.max_spread, spread_hi, spread_lo});
        const double rec = std::abs(phi0 - c * m * phi) /
                           std::max({std::abs(phi0), std::abs(c * m * phi), 1e-300});
        out.max_rec = std::max(out.max_rec, rec);
        const double pi_tilde = phi * s_tilde / v_tilde;
        out.max_pi = std::max({out.max_pi, sol.shadow_pi_lo - pi_tilde,
                               pi_tilde - sol.shadow_pi_hi});
        out.max_order = std::max({out.max_order, (v - v_tilde) / v_tilde,
                                  (ctx.margin * v_tilde - v) / v_tilde});
        out.selffin += (v_tilde - v_tilde_prev) - phi_prev * (s_tilde - s_tilde_prev);

        if (!ctx.degenerate) {
            const double pos = (ratio - ctx.lo) * bin_scale;
            const long long bin = std::clamp(static_cast<long long>(pos), 0ll,
                                             static_cast<long long>(cfg.hist_bins) - 1);
            ++out.hist[static_cast<std::size_t>(bin)];
        }
        if (cfg.record_full_paths) record_step(static_cast<double>(step) * cfg.dt);
    }

    out.log_v = std::log(v);
    out.log_v_tilde = std::log(v_tilde);
}

} // namespace

double reflect_update(double m, double S_new, const FrictionSolution& sol) {
    if (!(m > 0.0) || !(S_new > 0.0)) {
        throw DomainError("reflect_update: m and S must be positive");
    }
    const double lo = sol.ratio_lo();
    const double hi = sol.ratio_hi();
    const double raw = S_new / m;
    if (raw > hi) return S_new / hi;
    if (raw < lo) return S_new / lo;
    return m;
}

std::pair<double, double> portfolio_step(double phi0, double phi, double m_old, double m_new,
                                         bool at_unit_boundary, const FrictionSolution& sol) {
    if (!(m_old > 0.0) || !(m_new > 0.0)) {
        throw DomainError("portfolio_step: pivots must be positive");
    }
    if (m_new == m_old) return {phi0, phi};
    const double c = sol.c;
    double expo;
    if (at_unit_boundary) {
        expo = -c / (c + 1.0);
    } else {
        const double gbar = (1.0 - sol.params.lambda) * sol.s_bar;
        expo = -c / (c + gbar);
    }
    const double phi_new = phi * std::pow(m_new / m_old, expo);
    return {c * m_new * phi_new, phi_new};
}

SimSummary simulate_paths(const MarketParams& params, const FrictionSolution& sol,
                          const PathConfig& cfg) {
    validate_config(cfg);
    if (params.mu != sol.params.mu || params.sigma != sol.params.sigma ||
        params.lambda != sol.params.lambda) {
        throw DomainError("simulate_paths: params do not match the solved constants");
    }
    const double margin = admissibility_margin(sol);
    if (params.regime == Regime::HighTheta && !(margin > 0.0)) {
        throw DomainError("simulate_paths: admissibility margin is not positive; "
                          "lambda is too large for theta > 1");
    }

    const ShadowTransform transform(sol);
    RunContext ctx{sol,
                   transform,
                   sol.ratio_lo(),
                   sol.ratio_hi(),
                   params.theta > 1.0,
                   sol.degenerate(),
                   margin,
                   std::llround(cfg.horizon / cfg.dt),
                   (params.mu - 0.5 * params.sigma * params.sigma) * cfg.dt,
                   params.sigma * std::sqrt(cfg.dt)};
    if (ctx.n_steps < 1) throw DomainError("simulate_paths: horizon/dt below one step");

    std::vector<PathStats> stats(static_cast<std::size_t>(cfg.n_paths));
    unsigned n_threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                         : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(cfg.n_paths));

    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&](unsigned tid) {
        try {
            for (int i = static_cast<int>(tid); i < cfg.n_paths;
                 i += static_cast<int>(n_threads)) {
                simulate_one_path(ctx, cfg, i, stats[static_cast<std::size_t>(i)]);
            }
        } catch (...) {
            const std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };
    if (n_threads <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    // deterministic reduction in path order
    SimSummary sum;
    sum.horizon = cfg.horizon;
    sum.dt = cfg.dt;
    sum.n_paths = cfg.n_paths;
    sum.seed = cfg.seed;
    sum.log_v_T.reserve(stats.size());
    sum.log_v_tilde_T.reserve(stats.size());
    double sf_sq = 0.0;
    for (const PathStats& s : stats) {
        sum.log_v_T.push_back(s.log_v);
        sum.log_v_tilde_T.push_back(s.log_v_tilde);
        sum.max_spread_violation = std::max(sum.max_spread_violation, s.max_spread);
        sum.max_rec_violation = std::max(sum.max_rec_violation, s.max_rec);
        sum.max_pi_violation = std::max(sum.max_pi_violation, s.max_pi);
        sum.max_wealth_order_violation = std::max(sum.max_wealth_order_violation, s.max_order);
        sum.interior_trade_abs += s.interior_trade;
        sum.total_trade_abs += s.total_trade;
        sf_sq += s.selffin * s.selffin;
        sum.regime_flips += s.flips;
    }
    sum.selffin_rms = std::sqrt(sf_sq / static_cast<double>(cfg.n_paths));

    const auto mean_se = [&](const std::vector<double>& xs, double& mean, double& se) {
        double acc = 0.0;
        for (double v : xs) acc += v;
        mean = acc / static_cast<double>(xs.size());
        double var = 0.0;
        for (double v : xs) var += (v - mean) * (v - mean);
        var = xs.size() > 1 ? var / static_cast<double>(xs.size() - 1) : 0.0;
        se = std::sqrt(var / static_cast<double>(xs.size()));
    };
    mean_se(sum.log_v_T, sum.mean_log_v, sum.se_log_v);
    mean_se(sum.log_v_tilde_T, sum.mean_log_v_tilde, sum.se_log_v_tilde);
    const double t_eff = static_cast<double>(ctx.n_steps) * cfg.dt;
    sum.growth_empirical = (sum.mean_log_v_tilde - std::log(cfg.initial_wealth)) / t_eff;
    sum.growth_se = sum.se_log_v_tilde / t_eff;

    if (!ctx.degenerate) {
        sum.hist_lo = ctx.lo;
        sum.hist_hi = ctx.hi;
        sum.hist_counts.assign(static_cast<std::size_t>(cfg.hist_bins), 0);
        for (const PathStats& s : stats) {
            for (std::size_t b = 0; b < s.hist.size(); ++b) sum.hist_counts[b] += s.hist[b];
        }
    }
    if (cfg.record_full_paths) {
        sum.records.reserve(stats.size());
        for (PathStats& s : stats) sum.records.push_back(std::move(s.record));
    }
    return sum;
}

void write_path_csv(std::ostream& os, const PathRecord& rec) {
    os << "t,S,m,S_tilde,phi0,phi,V,V_tilde,regime\n";
    char buf[256];
    for (std::size_t i = 0; i < rec.times.size(); ++i) {
        std::snprintf(buf, sizeof(buf),
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", rec.times[i],
                      rec.S[i], rec.m[i], rec.S_tilde[i], rec.phi0[i], rec.phi[i], rec.V[i],
                      rec.V_tilde[i], static_cast<int>(rec.regime[i]));
        os << buf;
    }
}

} // namespace shadowtc
