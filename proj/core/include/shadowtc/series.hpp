#pragma once

#include <vector>

namespace shadowtc {

/// Truncated real power series sum_{k=0..K} a_k t^k; here t stands for
/// lambda^{1/3}, the natural small-cost scale. All arithmetic truncates
/// exactly at the common order K and never reorders terms. Immutable value
/// semantics; binary operations require matching orders.
class FracSeries {
public:
    explicit FracSeries(int order);
    explicit FracSeries(std::vector<double> coeffs);

    static FracSeries constant(double value, int order);
    static FracSeries identity(int order); // t itself

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    double coeff(int k) const;
    void set_coeff(int k, double value);
    const std::vector<double>& coeffs() const { return coeffs_; }

    /// Horner evaluation of the full truncation at numeric t.
    double eval(double t) const;
    /// Evaluation truncated at a lower order m <= K.
    double eval_truncated(double t, int max_order) const;

    FracSeries truncated(int new_order) const; // new_order <= K
    FracSeries extended(int new_order) const;  // zero-pad, new_order >= K

    FracSeries operator-() const;

    friend FracSeries operator+(const FracSeries& x, const FracSeries& y);
    friend FracSeries operator-(const FracSeries& x, const FracSeries& y);
    friend FracSeries operator*(const FracSeries& x, const FracSeries& y);
    friend FracSeries operator+(const FracSeries& x, double a);
    friend FracSeries operator+(double a, const FracSeries& x);
    friend FracSeries operator-(const FracSeries& x, double a);
    friend FracSeries operator-(double a, const FracSeries& x);
    friend FracSeries operator*(const FracSeries& x, double a);
    friend FracSeries operator*(double a, const FracSeries& x);

private:
    std::vector<double> coeffs_;
};

/// 1/x; requires a nonzero constant term.
FracSeries recip(const FracSeries& x);

/// x^alpha for real alpha via the Miller/Gould recurrence; requires a
/// positive constant term.
FracSeries pow_real(const FracSeries& x, double alpha);

/// exp(x) and log(x) (log requires a positive constant term).
FracSeries exp(const FracSeries& x);
FracSeries log(const FracSeries& x);

/// outer(inner(t)); inner must have zero constant term.
FracSeries compose(const FracSeries& outer, const FracSeries& inner);

/// Compositional inverse of phi (phi(0) = 0, phi'(0) != 0) by the Lagrange
/// inversion formula: [t^k] phi^{-1} = (1/k) [z^{k-1}] (z/phi(z))^k.
/// compose(phi, lagrange_invert(phi)) is the identity series to order K.
FracSeries lagrange_invert(const FracSeries& phi);

/// Multiply by t^k (order grows by k) / divide by t^k (drops the first k
/// coefficients, which must vanish to within |tol| relative to the largest
/// coefficient).
FracSeries shift_up(const FracSeries& x, int k);
FracSeries shift_down(const FracSeries& x, int k, double tol = 1e-9);

} // namespace shadowtc
