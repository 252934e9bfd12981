// End-to-end tests of the shadowtc binary: documents, formats, exit codes,
// and byte-for-byte reproducibility. The binary path is injected by CMake.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shadowtc/growth.hpp"
#include "shadowtc/model.hpp"
#include "shadowtc/solver.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path dir = fs::temp_directory_path() / "shadowtc_cli_tests";
    fs::create_directories(dir);
    const fs::path out = dir / ("out" + std::to_string(counter) + ".txt");
    const fs::path err = dir / ("err" + std::to_string(counter) + ".txt");
    ++counter;
    const std::string cmd = std::string(SHADOWTC_CLI_PATH) + " " + args + " > " +
                            out.string() + " 2> " + err.string();
    const int raw = std::system(cmd.c_str());
    const int code = (raw >= 0 && raw <= 255) ? raw : (raw >> 8) & 0xff;
    return RunResult{code, slurp(out), slurp(err)};
}

} // namespace

TEST_CASE("solve emits the documented fields and round-trips doubles") {
    const RunResult r = run_cli("solve --mu 0.08 --sigma 0.4 --lambda 0.01");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    for (const char* key : {"theta", "lambda", "c", "s_bar", "pi_lo", "pi_hi", "shadow_pi_lo",
                            "shadow_pi_hi", "symmetry_residual", "admissibility_margin"}) {
        CHECK(doc.contains(key));
    }
    // parsed doubles equal the in-process values bit for bit (17 digits)
    const auto sol = shadowtc::solve(shadowtc::validate_params(0.08, 0.4, 0.01));
    CHECK(doc["c"].get<double>() == sol.c);
    CHECK(doc["s_bar"].get<double>() == sol.s_bar);
    CHECK(doc["pi_lo"].get<double>() == sol.pi_lo);
    CHECK(doc["symmetry_residual"].get<double>() == shadowtc::symmetry_residual(sol));
    CHECK(doc["c"].get<double>() == doctest::Approx(1.3644).epsilon(1e-3));
    CHECK(doc["s_bar"].get<double>() == doctest::Approx(1.8805).epsilon(1e-3));
}

TEST_CASE("degenerate theta = 1 record") {
    const RunResult r = run_cli("solve --mu 0.16 --sigma 0.4 --lambda 0.01");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["c"].get<double>() == 0.0);
    CHECK(doc["s_bar"].is_string());
    CHECK(doc["s_bar"].get<std::string>() == "inf");
    CHECK(doc["pi_lo"].get<double>() == 1.0);
    CHECK(doc["pi_hi"].get<double>() == 1.0);
}

TEST_CASE("expand emits coefficient tables") {
    const RunResult r = run_cli("expand --theta 0.5 --order 3");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    const auto width = doc["width"].get<std::vector<double>>();
    REQUIRE(width.size() == 4);
    CHECK(width[0] == doctest::Approx(0.0));
    CHECK(width[1] == doctest::Approx(0.721125).epsilon(1e-5));
    CHECK(width[2] == doctest::Approx(0.0));
    CHECK(width[3] == doctest::Approx(0.1).epsilon(1e-9)); // -(1/10)(4 theta-3)(4 theta-1)
    CHECK(doc["c"].get<std::vector<double>>()[0] == doctest::Approx(1.0));
    CHECK(doc.contains("mid_width"));
    CHECK(doc.contains("coeff_growth"));
}

TEST_CASE("growth document carries both oracle routes") {
    const RunResult r = run_cli("growth --theta 0.5 --sigma 0.4 --lambda 0.01");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["delta_closed"].get<double>() == doctest::Approx(0.0195249).epsilon(1e-5));
    CHECK(doc["delta_closed"].get<double>() ==
          doctest::Approx(doc["delta_quadrature"].get<double>()).epsilon(1e-10));
    CHECK(doc["delta_frictionless"].get<double>() == doctest::Approx(0.02).epsilon(1e-12));
}

TEST_CASE("identical runs produce byte-identical documents") {
    const std::string cmd =
        "simulate --theta 0.5 --sigma 0.4 --lambda 0.01 --T 1 --dt 1e-3 --paths 8 --seed 7";
    const RunResult a = run_cli(cmd);
    const RunResult b = run_cli(cmd);
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());

    const RunResult c = run_cli("solve --theta 0.7 --lambda 0.03");
    const RunResult d = run_cli("solve --theta 0.7 --lambda 0.03");
    CHECK(c.out == d.out);
}

TEST_CASE("simulate reports invariant diagnostics") {
    const RunResult r = run_cli(
        "simulate --theta 0.5 --sigma 0.4 --lambda 0.01 --T 1 --dt 1e-3 --paths 4 --seed 3");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["max_spread_violation"].get<double>() <= 1e-12);
    CHECK(doc["max_rec_violation"].get<double>() <= 1e-12);
    CHECK(doc["interior_trade_fraction"].get<double>() == 0.0);
    CHECK(doc["n_paths"].get<int>() == 4);
    CHECK(doc["hist_counts"].get<std::vector<double>>().size() == 50);
}

TEST_CASE("record-paths writes per-path CSVs") {
    const fs::path dir = fs::temp_directory_path() / "shadowtc_cli_tests";
    fs::create_directories(dir);
    const std::string prefix = (dir / "rec_").string();
    const RunResult r = run_cli("simulate --theta 0.5 --sigma 0.4 --lambda 0.01 --T 0.01 "
                                "--dt 1e-3 --paths 2 --seed 1 --record-paths " +
                                prefix);
    REQUIRE(r.exit_code == 0);
    for (int i = 0; i < 2; ++i) {
        const std::string text = slurp(prefix + std::to_string(i) + ".csv");
        CHECK(text.rfind("t,S,m,S_tilde,phi0,phi,V,V_tilde,regime\n", 0) == 0);
    }
}

TEST_CASE("table sweeps lambda into plot-ready CSV") {
    const RunResult r = run_cli("table --theta 0.5 --sweep lambda:1e-3:1e-1:5:log");
    REQUIRE(r.exit_code == 0);
    std::istringstream is(r.out);
    std::string line;
    REQUIRE(std::getline(is, line));
    CHECK(line.rfind("theta,lambda,c,s_bar", 0) == 0);
    int rows = 0;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == 5);

    const RunResult t = run_cli("table --sigma 0.4 --lambda 0.01 --sweep theta:0.2:0.9:4 "
                                "--format json");
    REQUIRE(t.exit_code == 0);
    const json doc = json::parse(t.out);
    CHECK(doc["rows"].size() == 4);
    CHECK(doc["rows"][0]["theta"].get<double>() == doctest::Approx(0.2));
}

TEST_CASE("--out writes the document to a file") {
    const fs::path dir = fs::temp_directory_path() / "shadowtc_cli_tests";
    fs::create_directories(dir);
    const fs::path target = dir / "solve.json";
    const RunResult r =
        run_cli("solve --theta 0.5 --lambda 0.01 --out " + target.string());
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.empty());
    const json doc = json::parse(slurp(target));
    CHECK(doc.contains("c"));
}

TEST_CASE("exit codes distinguish domain errors from flag errors") {
    CHECK(run_cli("solve --mu 0.08 --sigma 0.4 --lambda 0").exit_code == 1);   // DomainError
    CHECK(run_cli("solve --mu 0.08 --sigma 0.4 --lambda 0.01 --bogus 1").exit_code == 2);
    CHECK(run_cli("solve --sigma 0.4 --lambda 0.01").exit_code == 1); // missing mu/theta
    CHECK(run_cli("solve --mu 0.08 --theta 0.5 --lambda 0.01").exit_code == 2); // conflict
    CHECK(run_cli("nonsense").exit_code == 2);
    CHECK(run_cli("expand --theta 1 --order 3").exit_code == 1); // UnsupportedRegime
    CHECK(run_cli("expand --theta 0.5 --order 40").exit_code == 2); // out of flag range
    CHECK(run_cli("table --theta 0.5 --sweep lambda:0:1").exit_code == 1); // bad sweep spec
    const RunResult err = run_cli("solve --mu 0.08 --sigma 0.4 --lambda 0");
    CHECK(err.err.find("error:") != std::string::npos);
}
