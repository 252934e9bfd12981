#include "shadowtc/series.hpp"

#include "shadowtc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace shadowtc {

namespace {

void require_same_order(const FracSeries& x, const FracSeries& y, const char* op) {
    if (x.order() != y.order()) {
        throw DomainError(std::string(op) + ": series orders differ (" +
                          std::to_string(x.order()) + " vs " + std::to_string(y.order()) + ")");
    }
}

} // namespace

FracSeries::FracSeries(int order) {
    if (order < 0) throw DomainError("FracSeries: order must be non-negative");
    coeffs_.assign(static_cast<std::size_t>(order) + 1, 0.0);
}

FracSeries::FracSeries(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw DomainError("FracSeries: empty coefficient list");
}

FracSeries FracSeries::constant(double value, int order) {
    FracSeries s(order);
    s.coeffs_[0] = value;
    return s;
}

FracSeries FracSeries::identity(int order) {
    if (order < 1) throw DomainError("FracSeries::identity: order must be >= 1");
    FracSeries s(order);
    s.coeffs_[1] = 1.0;
    return s;
}

double FracSeries::coeff(int k) const {
    if (k < 0 || k > order()) throw DomainError("FracSeries::coeff: index out of range");
    return coeffs_[static_cast<std::size_t>(k)];
}

void FracSeries::set_coeff(int k, double value) {
    if (k < 0 || k > order()) throw DomainError("FracSeries::set_coeff: index out of range");
    coeffs_[static_cast<std::size_t>(k)] = value;
}

double FracSeries::eval(double t) const {
    return eval_truncated(t, order());
}

double FracSeries::eval_truncated(double t, int max_order) const {
    if (max_order < 0 || max_order > order()) {
        throw DomainError("FracSeries::eval_truncated: order out of range");
    }
    double acc = 0.0;
    for (int k = max_order; k >= 0; --k) acc = acc * t + coeffs_[static_cast<std::size_t>(k)];
    return acc;
}

FracSeries FracSeries::truncated(int new_order) const {
    if (new_order < 0 || new_order > order()) {
        throw DomainError("FracSeries::truncated: order out of range");
    }
    return FracSeries(std::vector<double>(coeffs_.begin(), coeffs_.begin() + new_order + 1));
}

FracSeries FracSeries::extended(int new_order) const {
    if (new_order < order()) throw DomainError("FracSeries::extended: order must not shrink");
    std::vector<double> c = coeffs_;
    c.resize(static_cast<std::size_t>(new_order) + 1, 0.0);
    return FracSeries(std::move(c));
}

FracSeries FracSeries::operator-() const {
    FracSeries r = *this;
    for (double& c : r.coeffs_) c = -c;
    return r;
}

FracSeries operator+(const FracSeries& x, const FracSeries& y) {
    require_same_order(x, y, "series add");
    FracSeries r = x;
    for (std::size_t k = 0; k < r.coeffs_.size(); ++k) r.coeffs_[k] += y.coeffs_[k];
    return r;
}

FracSeries operator-(const FracSeries& x, const FracSeries& y) {
    require_same_order(x, y, "series sub");
    FracSeries r = x;
    for (std::size_t k = 0; k < r.coeffs_.size(); ++k) r.coeffs_[k] -= y.coeffs_[k];
    return r;
}

FracSeries operator*(const FracSeries& x, const FracSeries& y) {
    require_same_order(x, y, "series mul");
    const int n = x.order();
    FracSeries r(n);
    for (int i = 0; i <= n; ++i) {
        const double xi = x.coeffs_[static_cast<std::size_t>(i)];
        if (xi == 0.0) continue;
        for (int j = 0; i + j <= n; ++j) {
            const auto idx = static_cast<std::size_t>(i) + static_cast<std::size_t>(j);
            r.coeffs_[idx] += xi * y.coeffs_[static_cast<std::size_t>(j)];
        }
    }
    return r;
}

FracSeries operator+(const FracSeries& x, double a) {
    FracSeries r = x;
    r.coeffs_[0] += a;
    return r;
}
FracSeries operator+(double a, const FracSeries& x) { return x + a; }
FracSeries operator-(const FracSeries& x, double a) { return x + (-a); }
FracSeries operator-(double a, const FracSeries& x) { return (-x) + a; }
FracSeries operator*(const FracSeries& x, double a) {
    FracSeries r = x;
    for (double& c : r.coeffs_) c *= a;
    return r;
}
FracSeries operator*(double a, const FracSeries& x) { return x * a; }

FracSeries recip(const FracSeries& x) {
    const double x0 = x.coeff(0);
    if (x0 == 0.0) throw DomainError("recip: zero constant term");
    const int n = x.order();
    FracSeries y(n);
    y.set_coeff(0, 1.0 / x0);
    for (int k = 1; k <= n; ++k) {
        double acc = 0.0;
        for (int j = 1; j <= k; ++j) acc += x.coeff(j) * y.coeff(k - j);
        y.set_coeff(k, -acc / x0);
    }
    return y;
}

FracSeries pow_real(const FracSeries& x, double alpha) {
    const double x0 = x.coeff(0);
    if (!(x0 > 0.0)) throw DomainError("pow_real: constant term must be positive");
    const int n = x.order();
    FracSeries y(n);
    y.set_coeff(0, std::pow(x0, alpha));
    // n y_n x0 = sum_{k=0}^{n-1} (alpha (n-k) - k) y_k x_{n-k}
    for (int m = 1; m <= n; ++m) {
        double acc = 0.0;
        for (int k = 0; k < m; ++k) {
            acc += (alpha * (m - k) - k) * y.coeff(k) * x.coeff(m - k);
        }
        y.set_coeff(m, acc / (m * x0));
    }
    return y;
}

FracSeries exp(const FracSeries& x) {
    const int n = x.order();
    FracSeries y(n);
    y.set_coeff(0, std::exp(x.coeff(0)));
    for (int m = 1; m <= n; ++m) {
        double acc = 0.0;
        for (int k = 0; k < m; ++k) acc += (m - k) * x.coeff(m - k) * y.coeff(k);
        y.set_coeff(m, acc / m);
    }
    return y;
}

FracSeries log(const FracSeries& x) {
    const double x0 = x.coeff(0);
    if (!(x0 > 0.0)) throw DomainError("log: constant term must be positive");
    const int n = x.order();
    FracSeries y(n);
    y.set_coeff(0, std::log(x0));
    for (int m = 1; m <= n; ++m) {
        double acc = m * x.coeff(m);
        for (int k = 1; k < m; ++k) acc -= k * y.coeff(k) * x.coeff(m - k);
        y.set_coeff(m, acc / (m * x0));
    }
    return y;
}

FracSeries compose(const FracSeries& outer, const FracSeries& inner) {
    require_same_order(outer, inner, "compose");
    if (inner.coeff(0) != 0.0) {
        throw DomainError("compose: inner series must have zero constant term");
    }
    const int n = outer.order();
    FracSeries r = FracSeries::constant(outer.coeff(n), n);
    for (int k = n - 1; k >= 0; --k) r = r * inner + outer.coeff(k);
    return r;
}

FracSeries lagrange_invert(const FracSeries& phi) {
    if (phi.coeff(0) != 0.0) {
        throw DomainError("lagrange_invert: series must have zero constant term");
    }
    const int n = phi.order();
    if (n < 1 || phi.coeff(1) == 0.0) {
        throw DomainError("lagrange_invert: series must have nonzero linear term");
    }
    // z/phi(z) as a series of order n-1
    FracSeries shifted(std::max(n - 1, 0));
    for (int k = 0; k <= n - 1; ++k) shifted.set_coeff(k, phi.coeff(k + 1));
    const FracSeries r = recip(shifted);

    FracSeries inv(n);
    FracSeries pk = r; // r^k as k advances
    inv.set_coeff(1, pk.coeff(0));
    for (int k = 2; k <= n; ++k) {
        pk = pk * r;
        inv.set_coeff(k, pk.coeff(k - 1) / k);
    }
    return inv;
}

FracSeries shift_up(const FracSeries& x, int k) {
    if (k < 0) throw DomainError("shift_up: negative shift");
    std::vector<double> c(static_cast<std::size_t>(x.order()) + static_cast<std::size_t>(k) + 1, 0.0);
    for (int j = 0; j <= x.order(); ++j) {
        c[static_cast<std::size_t>(j) + static_cast<std::size_t>(k)] = x.coeff(j);
    }
    return FracSeries(std::move(c));
}

FracSeries shift_down(const FracSeries& x, int k, double tol) {
    if (k < 0 || k > x.order()) throw DomainError("shift_down: shift out of range");
    double scale = 0.0;
    for (int j = 0; j <= x.order(); ++j) scale = std::max(scale, std::abs(x.coeff(j)));
    for (int j = 0; j < k; ++j) {
        if (std::abs(x.coeff(j)) > tol * std::max(1.0, scale)) {
            throw DomainError("shift_down: coefficient " + std::to_string(j) +
                              " is not negligible (" + std::to_string(x.coeff(j)) + ")");
        }
    }
    std::vector<double> c(x.coeffs().begin() + k, x.coeffs().end());
    return FracSeries(std::move(c));
}

} // namespace shadowtc
