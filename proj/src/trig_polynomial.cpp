#include "ssf/trig_polynomial.hpp"

#include "ssf/error.hpp"

#include <cmath>
#include <cstdlib>

namespace ssf {

PowerCache::PowerCache(ComplexMatrix u) : u_(std::move(u)) {
    require_square(u_, "power base");
    const Eigen::Index n = u_.rows();
    positive_.push_back(ComplexMatrix::Identity(n, n));
    negative_.push_back(ComplexMatrix::Identity(n, n));
}

const ComplexMatrix& PowerCache::power(int n) {
    if (n >= 0) {
        while (static_cast<int>(positive_.size()) <= n) positive_.push_back(positive_.back() * u_);
        return positive_[static_cast<std::size_t>(n)];
    }
    const int m = -n;
    while (static_cast<int>(negative_.size()) <= m) negative_.push_back(negative_.back() * u_.adjoint());
    return negative_[static_cast<std::size_t>(m)];
}

TrigPolynomial TrigPolynomial::monomial(int n, Complex a) {
    TrigPolynomial p;
    p.add(n, a);
    return p;
}

TrigPolynomial& TrigPolynomial::add(int n, Complex a) {
    Complex& slot = coeffs_[n];
    slot += a;
    if (slot == Complex(0.0, 0.0)) coeffs_.erase(n);
    return *this;
}

Complex TrigPolynomial::coefficient(int n) const {
    const auto it = coeffs_.find(n);
    return it == coeffs_.end() ? Complex(0.0, 0.0) : it->second;
}

int TrigPolynomial::degree() const {
    int d = 0;
    for (const auto& [n, a] : coeffs_) d = std::max(d, std::abs(n));
    return d;
}

double TrigPolynomial::abs_sum() const {
    double s = 0.0;
    for (const auto& [n, a] : coeffs_) s += std::abs(a);
    return s;
}

double TrigPolynomial::first_moment() const {
    double s = 0.0;
    for (const auto& [n, a] : coeffs_) s += std::abs(n) * std::abs(a);
    return s;
}

double TrigPolynomial::second_moment() const {
    double s = 0.0;
    for (const auto& [n, a] : coeffs_) s += static_cast<double>(n) * n * std::abs(a);
    return s;
}

Complex TrigPolynomial::value(double t) const {
    Complex s = 0.0;
    for (const auto& [n, a] : coeffs_) s += a * std::exp(kI * (n * t));
    return s;
}

Complex TrigPolynomial::second_derivative(double t) const {
    Complex s = 0.0;
    for (const auto& [n, a] : coeffs_) s -= static_cast<double>(n) * n * a * std::exp(kI * (n * t));
    return s;
}

ComplexMatrix TrigPolynomial::evaluate(const ComplexMatrix& u) const {
    PowerCache powers(u);
    return evaluate(powers);
}

ComplexMatrix TrigPolynomial::evaluate(PowerCache& powers) const {
    const Eigen::Index d = powers.dim();
    ComplexMatrix out = ComplexMatrix::Zero(d, d);
    for (const auto& [n, a] : coeffs_) out += a * powers.power(n);
    return out;
}

TrigPolynomial& TrigPolynomial::operator+=(const TrigPolynomial& other) {
    for (const auto& [n, a] : other.coeffs_) add(n, a);
    return *this;
}

TrigPolynomial& TrigPolynomial::operator-=(const TrigPolynomial& other) {
    for (const auto& [n, a] : other.coeffs_) add(n, -a);
    return *this;
}

TrigPolynomial& TrigPolynomial::operator*=(Complex c) {
    if (c == Complex(0.0, 0.0)) {
        coeffs_.clear();
        return *this;
    }
    for (auto& [n, a] : coeffs_) a *= c;
    return *this;
}

TrigPolynomial operator+(TrigPolynomial a, const TrigPolynomial& b) { return a += b; }
TrigPolynomial operator-(TrigPolynomial a, const TrigPolynomial& b) { return a -= b; }
TrigPolynomial operator*(Complex c, TrigPolynomial p) { return p *= c; }

double sup_norm_sampled(const TrigPolynomial& p, int samples) {
    if (samples < 1) throw Error(ErrorCode::InvalidArgument, "sup-norm sampling needs samples >= 1");
    double best = 0.0;
    for (int j = 0; j < samples; ++j) {
        const double t = kTwoPi * j / samples;
        best = std::max(best, std::abs(p.value(t)));
    }
    return best;
}

TrigPolynomial random_trig_polynomial(Rng& rng, int degree) {
    if (degree < 0) throw Error(ErrorCode::InvalidArgument, "negative polynomial degree");
    std::normal_distribution<double> normal(0.0, 1.0);
    TrigPolynomial p;
    for (int n = -degree; n <= degree; ++n) {
        const double damp = 1.0 / ((1.0 + n * n) * (1.0 + n * n));
        const double re = normal(rng);
        const double im = normal(rng);
        p.add(n, damp * Complex(re, im));
    }
    return p;
}

}  // namespace ssf
