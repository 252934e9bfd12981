// shadowtc command-line front end: solve / expand / simulate / growth / table.
// All numeric output is serialized with 17 significant digits so documents
// are reproducible byte for byte and round-trip to the same doubles.

#include "output.hpp"

#include "shadowtc/asymptotics.hpp"
#include "shadowtc/errors.hpp"
#include "shadowtc/growth.hpp"
#include "shadowtc/model.hpp"
#include "shadowtc/simulate.hpp"
#include "shadowtc/solver.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace shadowtc;
using cli::CsvWriter;
using cli::JsonWriter;

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

struct MarketOpts {
    double mu = kUnset;
    double sigma = kUnset;
    double lambda = kUnset;
    double theta = kUnset;
};

MarketParams resolve_market(const MarketOpts& o) {
    if (!std::isnan(o.theta)) {
        const double sigma = std::isnan(o.sigma) ? 1.0 : o.sigma;
        return params_from_theta(o.theta, sigma, o.lambda);
    }
    if (std::isnan(o.mu) || std::isnan(o.sigma)) {
        throw DomainError("provide either --theta or both --mu and --sigma");
    }
    return validate_params(o.mu, o.sigma, o.lambda);
}

void add_market_options(CLI::App* cmd, MarketOpts& o, bool with_lambda) {
    auto* mu = cmd->add_option("--mu", o.mu, "Drift of the ask price");
    cmd->add_option("--sigma", o.sigma, "Volatility (default 1 when --theta is used)");
    cmd->add_option("--theta", o.theta, "Merton proportion mu/sigma^2 (sets mu = theta sigma^2)")
        ->excludes(mu);
    if (with_lambda) {
        cmd->add_option("--lambda", o.lambda, "Proportional transaction cost in (0,1)")
            ->required();
    }
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

std::vector<std::pair<std::string, double>> solve_fields(const FrictionSolution& sol) {
    return {{"theta", sol.params.theta},
            {"lambda", sol.params.lambda},
            {"c", sol.c},
            {"s_bar", sol.s_bar},
            {"pi_lo", sol.pi_lo},
            {"pi_hi", sol.pi_hi},
            {"shadow_pi_lo", sol.shadow_pi_lo},
            {"shadow_pi_hi", sol.shadow_pi_hi},
            {"symmetry_residual", symmetry_residual(sol)},
            {"admissibility_margin", admissibility_margin(sol)}};
}

std::string solve_document(const FrictionSolution& sol, const std::string& format) {
    const auto fields = solve_fields(sol);
    if (format == "csv") {
        std::vector<std::string> header;
        std::vector<double> row;
        for (const auto& [k, v] : fields) {
            header.push_back(k);
            row.push_back(v);
        }
        CsvWriter w(header);
        w.row(row);
        return w.take();
    }
    JsonWriter w;
    w.begin_object();
    for (const auto& [k, v] : fields) w.field(k, v);
    w.end_object();
    return w.take() + "\n";
}

// ---------------------------------------------------------------------------
// expand
// ---------------------------------------------------------------------------

double coeff_growth(const FracSeries& s) {
    // crude inverse-radius estimate from the top coefficients
    double g = 0.0;
    for (int k = std::max(1, s.order() - 3); k <= s.order(); ++k) {
        const double a = std::abs(s.coeff(k));
        if (a > 0.0) g = std::max(g, std::pow(a, 1.0 / k));
    }
    return g;
}

std::string expand_document(double theta, double sigma, int order, const std::string& format) {
    const FracSeries c = expand_c(theta, order);
    const FracSeries s_bar = expand_s_bar(theta, order);
    const BoundaryExpansion bd = expand_boundaries(theta, order);
    const FracSeries growth = expand_growth(theta, sigma, order);
    const BoundaryExpansion mid = expand_midprice(theta, order);

    const std::vector<std::pair<std::string, const FracSeries*>> series = {
        {"c", &c},           {"s_bar", &s_bar},       {"pi_lo", &bd.lo},
        {"pi_hi", &bd.hi},   {"width", &bd.width},    {"growth", &growth},
        {"mid_pi_lo", &mid.lo}, {"mid_pi_hi", &mid.hi}, {"mid_width", &mid.width}};

    if (format == "csv") {
        std::vector<std::string> header = {"power"};
        for (const auto& [name, ptr] : series) header.push_back(name);
        CsvWriter w(header);
        for (int k = 0; k <= order; ++k) {
            std::vector<double> row = {static_cast<double>(k)};
            for (const auto& [name, ptr] : series) row.push_back(ptr->coeff(k));
            w.row(row);
        }
        return w.take();
    }

    JsonWriter w;
    w.begin_object();
    w.field("theta", theta);
    w.field("sigma", sigma);
    w.field("order", order);
    w.field("power_scale",
            std::string_view("lambda^(k/3); mid_* series are in lambda_check^(k/3)"));
    for (const auto& [name, ptr] : series) w.field(name, ptr->coeffs());
    // empirical coefficient growth max |a_k|^{1/k}, an inverse-radius proxy
    // for the truncated series (no convergence claim attached)
    w.key_object("coeff_growth");
    for (const auto& [name, ptr] : series) w.field(name, coeff_growth(*ptr));
    w.end_object();
    w.end_object();
    return w.take() + "\n";
}

// ---------------------------------------------------------------------------
// growth
// ---------------------------------------------------------------------------

std::string growth_document(const MarketParams& p, const GrowthReport& rep,
                            const std::string& format) {
    const std::vector<std::pair<std::string, double>> fields = {
        {"theta", p.theta},
        {"lambda", p.lambda},
        {"sigma", p.sigma},
        {"delta_closed", rep.delta_closed},
        {"delta_quadrature", rep.delta_quadrature},
        {"delta_frictionless", rep.delta_frictionless},
        {"stationary_normalizer", rep.stationary_normalizer}};
    if (format == "csv") {
        std::vector<std::string> header;
        std::vector<double> row;
        for (const auto& [k, v] : fields) {
            header.push_back(k);
            row.push_back(v);
        }
        CsvWriter w(header);
        w.row(row);
        return w.take();
    }
    JsonWriter w;
    w.begin_object();
    for (const auto& [k, v] : fields) w.field(k, v);
    w.end_object();
    return w.take() + "\n";
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

std::string simulate_document(const MarketParams& p, const FrictionSolution& sol,
                              const SimSummary& sum, const std::string& format) {
    const double interior_fraction =
        sum.total_trade_abs > 0.0 ? sum.interior_trade_abs / sum.total_trade_abs : 0.0;
    const double growth_closed = growth_rate_closed(sol, p.sigma);
    const std::vector<std::pair<std::string, double>> fields = {
        {"theta", p.theta},
        {"lambda", p.lambda},
        {"mu", p.mu},
        {"sigma", p.sigma},
        {"T", sum.horizon},
        {"dt", sum.dt},
        {"growth_empirical", sum.growth_empirical},
        {"growth_se", sum.growth_se},
        {"growth_closed", growth_closed},
        {"mean_log_v_tilde", sum.mean_log_v_tilde},
        {"se_log_v_tilde", sum.se_log_v_tilde},
        {"mean_log_v", sum.mean_log_v},
        {"se_log_v", sum.se_log_v},
        {"max_spread_violation", sum.max_spread_violation},
        {"max_rec_violation", sum.max_rec_violation},
        {"max_pi_violation", sum.max_pi_violation},
        {"max_wealth_order_violation", sum.max_wealth_order_violation},
        {"interior_trade_fraction", interior_fraction},
        {"total_trade_abs", sum.total_trade_abs},
        {"selffin_rms", sum.selffin_rms},
        {"hist_lo", sum.hist_lo},
        {"hist_hi", sum.hist_hi}};

    if (format == "csv") {
        CsvWriter w({"key", "value"});
        w.raw_row({"n_paths", std::to_string(sum.n_paths)});
        w.raw_row({"seed", std::to_string(sum.seed)});
        w.raw_row({"regime_flips", std::to_string(sum.regime_flips)});
        for (const auto& [k, v] : fields) w.raw_row({k, cli::format_double(v)});
        for (std::size_t i = 0; i < sum.hist_counts.size(); ++i) {
            w.raw_row({"hist_" + std::to_string(i), std::to_string(sum.hist_counts[i])});
        }
        return w.take();
    }

    JsonWriter w;
    w.begin_object();
    w.field("n_paths", sum.n_paths);
    w.field("seed", static_cast<unsigned long long>(sum.seed));
    w.field("regime_flips", static_cast<long long>(sum.regime_flips));
    for (const auto& [k, v] : fields) w.field(k, v);
    w.begin_array("hist_counts");
    for (std::uint64_t n : sum.hist_counts) w.element(static_cast<unsigned long long>(n));
    w.end_array();
    w.end_object();
    return w.take() + "\n";
}

// ---------------------------------------------------------------------------
// table
// ---------------------------------------------------------------------------

struct SweepSpec {
    std::string dim; // "lambda" or "theta"
    double start = 0.0;
    double stop = 0.0;
    int points = 0;
    bool log_spaced = false;
};

SweepSpec parse_sweep(const std::string& text) {
    std::vector<std::string> tok;
    std::string cur;
    for (char ch : text) {
        if (ch == ':') {
            tok.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    tok.push_back(cur);
    if (tok.size() != 4 && tok.size() != 5) {
        throw DomainError("sweep spec must be dim:start:stop:points[:log|lin]");
    }
    SweepSpec s;
    s.dim = tok[0];
    if (s.dim != "lambda" && s.dim != "theta") {
        throw DomainError("sweep dimension must be 'lambda' or 'theta'");
    }
    try {
        s.start = std::stod(tok[1]);
        s.stop = std::stod(tok[2]);
        s.points = std::stoi(tok[3]);
    } catch (const std::exception&) {
        throw DomainError("sweep spec has non-numeric start/stop/points");
    }
    if (s.points < 1) throw DomainError("sweep must have at least one point");
    if (tok.size() == 5) {
        if (tok[4] == "log") {
            s.log_spaced = true;
        } else if (tok[4] == "lin") {
            s.log_spaced = false;
        } else {
            throw DomainError("sweep spacing must be 'log' or 'lin'");
        }
    }
    if (s.log_spaced && !(s.start > 0.0 && s.stop > 0.0)) {
        throw DomainError("log-spaced sweep needs positive endpoints");
    }
    return s;
}

std::vector<double> sweep_grid(const SweepSpec& s) {
    std::vector<double> g;
    g.reserve(static_cast<std::size_t>(s.points));
    if (s.points == 1) {
        g.push_back(s.start);
        return g;
    }
    for (int i = 0; i < s.points; ++i) {
        const double w = static_cast<double>(i) / (s.points - 1);
        if (s.log_spaced) {
            g.push_back(s.start * std::pow(s.stop / s.start, w));
        } else {
            g.push_back(s.start + (s.stop - s.start) * w);
        }
    }
    return g;
}

std::string table_document(const MarketOpts& opts, const SweepSpec& sweep,
                           const std::string& format) {
    const std::vector<std::string> cols = {
        "theta",        "lambda",       "c",
        "s_bar",        "pi_lo",        "pi_hi",
        "shadow_pi_lo", "shadow_pi_hi", "width",
        "symmetry_residual", "admissibility_margin", "delta_closed",
        "delta_quadrature",  "delta_frictionless"};

    std::vector<std::vector<double>> rows;
    for (double v : sweep_grid(sweep)) {
        MarketParams p;
        if (sweep.dim == "lambda") {
            MarketOpts o = opts;
            o.lambda = v;
            p = resolve_market(o);
        } else {
            if (!std::isnan(opts.mu)) {
                throw DomainError("theta sweep fixes mu = theta sigma^2; drop --mu");
            }
            if (std::isnan(opts.lambda)) throw DomainError("theta sweep requires --lambda");
            p = params_from_theta(v, std::isnan(opts.sigma) ? 1.0 : opts.sigma, opts.lambda);
        }
        const FrictionSolution sol = solve(p);
        const GrowthReport rep = growth_report(sol, p.sigma);
        rows.push_back({p.theta, p.lambda, sol.c, sol.s_bar, sol.pi_lo, sol.pi_hi,
                        sol.shadow_pi_lo, sol.shadow_pi_hi, sol.pi_hi - sol.pi_lo,
                        symmetry_residual(sol), admissibility_margin(sol), rep.delta_closed,
                        rep.delta_quadrature, rep.delta_frictionless});
    }

    if (format == "json") {
        JsonWriter w;
        w.begin_object();
        w.begin_array("rows");
        for (const auto& row : rows) {
            w.open_object_element();
            for (std::size_t i = 0; i < cols.size(); ++i) w.field(cols[i], row[i]);
            w.end_object();
        }
        w.end_array();
        w.end_object();
        return w.take() + "\n";
    }
    CsvWriter w(cols);
    for (const auto& row : rows) w.row(row);
    return w.take();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Growth-optimal trading under proportional transaction costs "
                 "(shadow-price construction)"};
    app.require_subcommand(1);
    app.fallthrough(); // --format/--out may follow the subcommand

    std::string format;
    std::string out_path;
    app.add_option("--format", format, "Output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", out_path, "Write the document to this path instead of stdout");

    std::function<std::string()> run;

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "Solve the free-boundary constants c, s_bar");
    MarketOpts solve_opts;
    add_market_options(solve_cmd, solve_opts, true);
    solve_cmd->callback([&] {
        run = [&]() {
            const FrictionSolution sol = solve(resolve_market(solve_opts));
            return solve_document(sol, format.empty() ? "json" : format);
        };
    });

    // expand
    auto* expand_cmd =
        app.add_subcommand("expand", "Fractional expansions in lambda^(1/3) of all quantities");
    double expand_theta = kUnset, expand_sigma = 1.0;
    int expand_order = 9;
    expand_cmd->add_option("--theta", expand_theta, "Merton proportion")->required();
    expand_cmd->add_option("--sigma", expand_sigma, "Volatility for the growth series");
    expand_cmd->add_option("--order", expand_order, "Truncation order K (powers of lambda^(1/3))")
        ->check(CLI::Range(1, 12));
    expand_cmd->callback([&] {
        run = [&]() {
            return expand_document(expand_theta, expand_sigma, expand_order,
                                   format.empty() ? "json" : format);
        };
    });

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo of the reflected optimal policy");
    MarketOpts sim_opts;
    add_market_options(sim_cmd, sim_opts, true);
    PathConfig cfg;
    cfg.horizon = 10.0;
    cfg.dt = 1e-3;
    cfg.n_paths = 100;
    cfg.seed = 1;
    std::string record_prefix;
    sim_cmd->add_option("--T", cfg.horizon, "Time horizon");
    sim_cmd->add_option("--dt", cfg.dt, "Time step");
    sim_cmd->add_option("--paths", cfg.n_paths, "Number of Monte Carlo paths");
    sim_cmd->add_option("--seed", cfg.seed, "Master RNG seed");
    sim_cmd->add_option("--bins", cfg.hist_bins, "Occupation histogram bins");
    sim_cmd->add_option("--threads", cfg.threads, "Worker threads (0 = hardware)");
    sim_cmd->add_option("--record-paths", record_prefix,
                        "Write per-path CSVs to <prefix><index>.csv");
    sim_cmd->callback([&] {
        run = [&]() {
            const MarketParams p = resolve_market(sim_opts);
            const FrictionSolution sol = solve(p);
            cfg.record_full_paths = !record_prefix.empty();
            const SimSummary sum = simulate_paths(p, sol, cfg);
            for (std::size_t i = 0; i < sum.records.size(); ++i) {
                const std::string path = record_prefix + std::to_string(i) + ".csv";
                std::ofstream os(path, std::ios::binary);
                if (!os) throw std::runtime_error("cannot open " + path);
                write_path_csv(os, sum.records[i]);
            }
            return simulate_document(p, sol, sum, format.empty() ? "json" : format);
        };
    });

    // growth
    auto* growth_cmd =
        app.add_subcommand("growth", "Closed-form growth rate and its quadrature oracle");
    MarketOpts growth_opts;
    add_market_options(growth_cmd, growth_opts, true);
    growth_cmd->callback([&] {
        run = [&]() {
            const MarketParams p = resolve_market(growth_opts);
            const FrictionSolution sol = solve(p);
            return growth_document(p, growth_report(sol, p.sigma),
                                   format.empty() ? "json" : format);
        };
    });

    // table
    auto* table_cmd = app.add_subcommand("table", "Sweep lambda or theta, one row per point");
    MarketOpts table_opts;
    add_market_options(table_cmd, table_opts, false);
    table_cmd->add_option("--lambda", table_opts.lambda,
                          "Transaction cost (fixed value for theta sweeps)");
    std::string sweep_text;
    table_cmd->add_option("--sweep", sweep_text, "dim:start:stop:points[:log|lin]")->required();
    table_cmd->callback([&] {
        run = [&]() {
            return table_document(table_opts, parse_sweep(sweep_text),
                                  format.empty() ? "csv" : format);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        cli::emit(out_path, run());
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const UnsupportedRegime& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const SimulationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const QuadratureError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
