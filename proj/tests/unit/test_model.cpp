#include "shadowtc/model.hpp"

#include "shadowtc/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace shadowtc;

TEST_CASE("validate_params derives theta and regime") {
    const MarketParams p = validate_params(0.08, 0.4, 0.01);
    CHECK(p.theta == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(p.regime == Regime::Half);

    const MarketParams unit = validate_params(0.16, 0.4, 0.01);
    CHECK(unit.theta == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(unit.regime == Regime::Unit);

    CHECK(validate_params(0.04, 0.4, 0.01).regime == Regime::LowTheta);
    CHECK(validate_params(0.12, 0.4, 0.01).regime == Regime::MidTheta);
    CHECK(validate_params(0.32, 0.4, 0.01).regime == Regime::HighTheta);
}

TEST_CASE("validate_params rejects out-of-range input") {
    CHECK_THROWS_AS(validate_params(0.08, 0.4, 0.0), DomainError);
    CHECK_THROWS_AS(validate_params(0.08, 0.4, 1.0), DomainError);
    CHECK_THROWS_AS(validate_params(0.08, 0.4, -0.1), DomainError);
    CHECK_THROWS_AS(validate_params(0.08, 0.0, 0.01), DomainError);
    CHECK_THROWS_AS(validate_params(0.08, -0.4, 0.01), DomainError);
    CHECK_THROWS_AS(validate_params(0.0, 0.4, 0.01), DomainError);
    CHECK_THROWS_AS(validate_params(-0.08, 0.4, 0.01), DomainError);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(validate_params(nan, 0.4, 0.01), DomainError);
    CHECK_THROWS_AS(validate_params(0.08, inf, 0.01), DomainError);
    CHECK_THROWS_AS(validate_params(0.08, 0.4, nan), DomainError);
}

TEST_CASE("regime classification partitions the positive axis") {
    // exhaustive and exclusive over a dense grid, including the special points
    for (int i = 1; i <= 4000; ++i) {
        const double theta = i * 1e-3;
        const Regime r = classify_theta(theta);
        int matches = 0;
        if (r == Regime::LowTheta) matches += (theta < 0.5) ? 1 : 0;
        if (r == Regime::Half) matches += (std::abs(theta - 0.5) <= 1e-12) ? 1 : 0;
        if (r == Regime::MidTheta) matches += (theta > 0.5 && theta < 1.0) ? 1 : 0;
        if (r == Regime::Unit) matches += (std::abs(theta - 1.0) <= 1e-12) ? 1 : 0;
        if (r == Regime::HighTheta) matches += (theta > 1.0) ? 1 : 0;
        CHECK(matches == 1);
    }
    CHECK(classify_theta(0.5) == Regime::Half);
    CHECK(classify_theta(1.0) == Regime::Unit);
    // within the 1e-12 relative detection tolerance
    CHECK(classify_theta(0.5 * (1.0 + 1e-13)) == Regime::Half);
    CHECK(classify_theta(1.0 + 1e-13) == Regime::Unit);
    CHECK(classify_theta(0.5 * (1.0 + 1e-9)) == Regime::MidTheta);
}

TEST_CASE("validate_params is pure") {
    const MarketParams a = validate_params(0.11, 0.37, 0.03);
    const MarketParams b = validate_params(0.11, 0.37, 0.03);
    CHECK(a.theta == b.theta);
    CHECK(a.regime == b.regime);
    CHECK(a.mu == b.mu);
}

TEST_CASE("params_from_theta round-trips the proportion") {
    const MarketParams p = params_from_theta(0.7, 0.25, 0.02);
    CHECK(p.mu == doctest::Approx(0.7 * 0.0625).epsilon(1e-15));
    CHECK(p.theta == doctest::Approx(0.7).epsilon(1e-14));
    CHECK_THROWS_AS(params_from_theta(-1.0, 0.25, 0.02), DomainError);
}
