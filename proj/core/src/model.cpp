#include "shadowtc/model.hpp"

#include "shadowtc/errors.hpp"

#include <cmath>
#include <string>

namespace shadowtc {

std::string_view to_string(Regime regime) {
    switch (regime) {
    case Regime::LowTheta: return "low_theta";
    case Regime::Half: return "half";
    case Regime::MidTheta: return "mid_theta";
    case Regime::Unit: return "unit";
    case Regime::HighTheta: return "high_theta";
    }
    return "unknown";
}

Regime classify_theta(double theta) {
    constexpr double rel_tol = 1e-12;
    if (std::abs(theta - 0.5) <= 0.5 * rel_tol) return Regime::Half;
    if (std::abs(theta - 1.0) <= rel_tol) return Regime::Unit;
    if (theta < 0.5) return Regime::LowTheta;
    if (theta < 1.0) return Regime::MidTheta;
    return Regime::HighTheta;
}

MarketParams validate_params(double mu, double sigma, double lambda) {
    if (!std::isfinite(mu) || !std::isfinite(sigma) || !std::isfinite(lambda)) {
        throw DomainError("market parameters must be finite");
    }
    if (sigma <= 0.0) {
        throw DomainError("sigma must be positive, got " + std::to_string(sigma));
    }
    if (mu <= 0.0) {
        throw DomainError("mu must be positive, got " + std::to_string(mu));
    }
    if (!(lambda > 0.0 && lambda < 1.0)) {
        throw DomainError("lambda must lie in (0,1), got " + std::to_string(lambda));
    }
    const double theta = mu / (sigma * sigma);
    return MarketParams{mu, sigma, lambda, theta, classify_theta(theta)};
}

MarketParams params_from_theta(double theta, double sigma, double lambda) {
    if (!std::isfinite(theta) || theta <= 0.0) {
        throw DomainError("theta must be positive and finite");
    }
    return validate_params(theta * sigma * sigma, sigma, lambda);
}

} // namespace shadowtc
