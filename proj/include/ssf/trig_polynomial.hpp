#pragma once

// Finite Fourier sums p(e^{it}) = sum_n a_n e^{int}.

#include "ssf/linalg.hpp"

#include <map>
#include <vector>

namespace ssf {

/// Powers U^n, n in Z, by repeated multiplication; negative powers use U*.
class PowerCache {
public:
    explicit PowerCache(ComplexMatrix u);

    const ComplexMatrix& power(int n);
    Eigen::Index dim() const { return u_.rows(); }

private:
    ComplexMatrix u_;
    std::vector<ComplexMatrix> positive_;  // positive_[k] = U^k
    std::vector<ComplexMatrix> negative_;  // negative_[k] = (U*)^k
};

class TrigPolynomial {
public:
    TrigPolynomial() = default;

    static TrigPolynomial monomial(int n, Complex a = 1.0);
    static TrigPolynomial constant(Complex a) { return monomial(0, a); }

    /// Adds a to the n-th coefficient; exact zeros are dropped.
    TrigPolynomial& add(int n, Complex a);
    Complex coefficient(int n) const;
    const std::map<int, Complex>& coefficients() const { return coeffs_; }

    bool empty() const { return coeffs_.empty(); }
    int degree() const;

    double abs_sum() const;        // sum |a_n|
    double first_moment() const;   // sum |n| |a_n|
    double second_moment() const;  // sum n^2 |a_n|

    Complex value(double t) const;
    Complex second_derivative(double t) const;  // d^2/dt^2 p(e^{it})

    /// sum_n a_n U^n with powers from repeated multiplication.
    ComplexMatrix evaluate(const ComplexMatrix& u) const;
    ComplexMatrix evaluate(PowerCache& powers) const;

    TrigPolynomial& operator+=(const TrigPolynomial& other);
    TrigPolynomial& operator-=(const TrigPolynomial& other);
    TrigPolynomial& operator*=(Complex c);

private:
    std::map<int, Complex> coeffs_;
};

TrigPolynomial operator+(TrigPolynomial a, const TrigPolynomial& b);
TrigPolynomial operator-(TrigPolynomial a, const TrigPolynomial& b);
TrigPolynomial operator*(Complex c, TrigPolynomial p);

/// max_t |p(e^{it})| over `samples` equispaced points of [0, 2pi).
double sup_norm_sampled(const TrigPolynomial& p, int samples = 4096);

/// Coefficients for |n| <= degree, complex Gaussian damped by (1 + n^2)^{-2}
/// so the second moment stays O(1).
TrigPolynomial random_trig_polynomial(Rng& rng, int degree);

}  // namespace ssf
