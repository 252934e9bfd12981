#pragma once

#include <string_view>

namespace shadowtc {

/// Analytic regime of the Merton proportion theta = mu/sigma^2. The free
/// boundary equation, the transform g and the stationary density all branch
/// on it; theta = 1/2 and theta = 1 are genuine special cases, not numerical
/// conveniences.
enum class Regime {
    LowTheta,  // theta in (0, 1/2)
    Half,      // theta = 1/2
    MidTheta,  // theta in (1/2, 1)
    Unit,      // theta = 1 (degenerate: all wealth in stock)
    HighTheta, // theta > 1 (leveraged: short the bond)
};

std::string_view to_string(Regime regime);

/// Black-Scholes market with proportional transaction costs. The ask price
/// follows dS/S = mu dt + sigma dW with S0 = 1 and r = 0 fixed; the bid
/// price is (1-lambda) S. theta is always derived from (mu, sigma), never
/// stored independently.
struct MarketParams {
    double mu;     // drift, per unit time
    double sigma;  // volatility, per sqrt(time)
    double lambda; // proportional transaction cost, in (0,1)
    double theta;  // Merton proportion mu/sigma^2
    Regime regime;
};

/// Classifies theta into its regime. The boundaries 1/2 and 1 are detected
/// with relative tolerance 1e-12 on the computed ratio.
Regime classify_theta(double theta);

/// Validates sigma > 0, mu > 0, lambda in (0,1), all finite, and returns the
/// populated MarketParams. Throws DomainError otherwise.
MarketParams validate_params(double mu, double sigma, double lambda);

/// Convenience constructor with mu = theta * sigma^2.
MarketParams params_from_theta(double theta, double sigma, double lambda);

} // namespace shadowtc
