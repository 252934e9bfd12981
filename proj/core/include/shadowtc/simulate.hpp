#pragma once

#include "shadowtc/solver.hpp"

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

namespace shadowtc {

/// Monte Carlo run configuration. Per-path randomness is a deterministic
/// function of (seed, path_index), so results do not depend on how paths are
/// scheduled across threads.
struct PathConfig {
    double horizon = 1.0; // T
    double dt = 1e-3;
    int n_paths = 1;
    std::uint64_t seed = 0;
    bool record_full_paths = false;
    int hist_bins = 50;
    int threads = 0; // 0 = hardware concurrency
    double initial_wealth = 1.0;
};

/// Full time series of one simulated path (only filled on request).
struct PathRecord {
    std::vector<double> times;
    std::vector<double> S;       // ask price
    std::vector<double> m;       // reflection pivot
    std::vector<double> S_tilde; // shadow price m g(S/m)
    std::vector<double> phi0;    // bond units
    std::vector<double> phi;     // stock units
    std::vector<double> V;       // liquidation wealth
    std::vector<double> V_tilde; // shadow wealth
    std::vector<std::uint8_t> regime; // 0: tracking at ratio 1, 1: at s_bar
};

struct SimSummary {
    double horizon = 0.0;
    double dt = 0.0;
    int n_paths = 0;
    std::uint64_t seed = 0;

    std::vector<double> log_v_T;
    std::vector<double> log_v_tilde_T;
    double mean_log_v = 0.0;
    double se_log_v = 0.0;
    double mean_log_v_tilde = 0.0;
    double se_log_v_tilde = 0.0;
    double growth_empirical = 0.0; // (mean log V_tilde_T - log x)/T
    double growth_se = 0.0;

    // pathwise invariant diagnostics, max over all steps of all paths
    double max_spread_violation = 0.0;       // of (1-l)S <= S_tilde <= S, relative to S
    double max_rec_violation = 0.0;          // of phi0 = c m phi, relative
    double max_pi_violation = 0.0;           // of pi_tilde in [shadow_pi_lo, shadow_pi_hi]
    double max_wealth_order_violation = 0.0; // of margin V_tilde <= V <= V_tilde, rel.
    double interior_trade_abs = 0.0;         // |dphi| mass away from both boundaries
    double total_trade_abs = 0.0;
    double selffin_rms = 0.0; // RMS over paths of sum(dV_tilde - phi dS_tilde)
    long long regime_flips = 0;

    // occupation histogram of the reflected ratio S/m (empty for theta = 1)
    double hist_lo = 0.0;
    double hist_hi = 0.0;
    std::vector<std::uint64_t> hist_counts;

    std::vector<PathRecord> records; // only if record_full_paths
};

/// One reflection update: returns the pivot m' that keeps S_new/m' inside
/// the reflection domain, moving m only when a boundary is crossed.
double reflect_update(double m, double S_new, const FrictionSolution& sol);

/// Multiplicative portfolio update over a pivot move m_old -> m_new.
/// at_unit_boundary selects the exponent pair for trades at the ratio-1
/// boundary (buying at the ask) versus the s_bar boundary (selling at the
/// bid). phi0 is restored from phi0 = c m phi exactly.
std::pair<double, double> portfolio_step(double phi0, double phi, double m_old, double m_new,
                                         bool at_unit_boundary, const FrictionSolution& sol);

/// Simulates n_paths independent discretized paths: exact GBM price steps,
/// one reflection clamp per step, trades only at the boundaries. Throws
/// SimulationError if a wealth process becomes non-positive.
SimSummary simulate_paths(const MarketParams& params, const FrictionSolution& sol,
                          const PathConfig& cfg);

/// CSV dump (t,S,m,S_tilde,phi0,phi,V,V_tilde,regime) of one recorded path.
void write_path_csv(std::ostream& os, const PathRecord& rec);

} // namespace shadowtc
