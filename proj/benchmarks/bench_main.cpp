#include "shadowtc/asymptotics.hpp"
#include "shadowtc/growth.hpp"
#include "shadowtc/model.hpp"
#include "shadowtc/shadow.hpp"
#include "shadowtc/simulate.hpp"
#include "shadowtc/solver.hpp"

#include <benchmark/benchmark.h>

using namespace shadowtc;

namespace {

const MarketParams kParams = params_from_theta(0.5, 0.4, 0.01);
const FrictionSolution kSol = solve(kParams);
const ShadowTransform kTransform(kSol);

void BM_solve_c(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_c(kParams));
    }
}
BENCHMARK(BM_solve_c);

void BM_solve_c_high_theta(benchmark::State& state) {
    const MarketParams p = params_from_theta(2.0, 0.4, 0.005);
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_c(p));
    }
}
BENCHMARK(BM_solve_c_high_theta);

void BM_g_eval(benchmark::State& state) {
    double s = 1.0;
    const double hi = kTransform.domain_hi();
    for (auto _ : state) {
        s += 0.001;
        if (s >= hi) s = 1.0;
        benchmark::DoNotOptimize(kTransform.g(s));
    }
}
BENCHMARK(BM_g_eval);

void BM_drift_vol(benchmark::State& state) {
    const double mid = 0.5 * (kTransform.domain_lo() + kTransform.domain_hi());
    for (auto _ : state) {
        benchmark::DoNotOptimize(kTransform.drift_vol(mid));
    }
}
BENCHMARK(BM_drift_vol);

void BM_expand_order9(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(expand_c(0.7, 9));
    }
}
BENCHMARK(BM_expand_order9);

void BM_expand_ansatz_order9(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(expand_ansatz(0.7, 9));
    }
}
BENCHMARK(BM_expand_ansatz_order9);

void BM_growth_quadrature(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(growth_rate_quadrature(kSol, 0.4));
    }
}
BENCHMARK(BM_growth_quadrature);

void BM_simulate_steps(benchmark::State& state) {
    PathConfig cfg;
    cfg.horizon = 1.0;
    cfg.dt = 1e-4;
    cfg.n_paths = 1;
    cfg.seed = 9;
    cfg.threads = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_paths(kParams, kSol, cfg));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(1.0 / cfg.dt));
}
BENCHMARK(BM_simulate_steps);

} // namespace

BENCHMARK_MAIN();
