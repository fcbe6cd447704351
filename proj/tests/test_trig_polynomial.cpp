#include "doctest.h"

#include "ssf/trig_polynomial.hpp"

#include <cmath>

using namespace ssf;

TEST_CASE("coefficients, weights and arithmetic") {
    TrigPolynomial p = TrigPolynomial::monomial(3) - 2.0 * TrigPolynomial::monomial(-2);
    CHECK(p.degree() == 3);
    CHECK(p.coefficient(3) == Complex(1.0));
    CHECK(p.coefficient(-2) == Complex(-2.0));
    CHECK(p.coefficient(0) == Complex(0.0));
    CHECK(p.abs_sum() == doctest::Approx(3.0));
    CHECK(p.first_moment() == doctest::Approx(7.0));
    CHECK(p.second_moment() == doctest::Approx(17.0));

    p += TrigPolynomial::monomial(3, -1.0);
    CHECK(p.coefficients().size() == 1);
    CHECK((0.0 * p).empty());
}

TEST_CASE("pointwise values and second derivative") {
    TrigPolynomial p;
    p.add(2, Complex(0.5, 1.0)).add(-1, 3.0).add(0, -1.0);
    for (double t : {0.0, 0.7, 2.5}) {
        const Complex direct = Complex(0.5, 1.0) * std::exp(kI * (2.0 * t)) + 3.0 * std::exp(-kI * t) - 1.0;
        CHECK(std::abs(p.value(t) - direct) < 1e-14);
        const double h = 1e-4;
        const Complex fd = (p.value(t + h) - 2.0 * p.value(t) + p.value(t - h)) / (h * h);
        CHECK(std::abs(p.second_derivative(t) - fd) < 1e-5);
    }
}

TEST_CASE("matrix evaluation by powers matches the eigen-decomposition route") {
    Rng rng(4);
    const ComplexMatrix u = haar_unitary(rng, 5);
    TrigPolynomial p = random_trig_polynomial(rng, 4);
    const auto dec = unitary_eig(u);
    const ComplexMatrix via_spectrum = dec.function([&](double t) { return p.value(t); });
    CHECK((p.evaluate(u) - via_spectrum).norm() < 1e-12);

    PowerCache cache(u);
    CHECK((cache.power(-3) * cache.power(3) - ComplexMatrix::Identity(5, 5)).norm() < 1e-13);
}

TEST_CASE("sampled sup norm") {
    CHECK(sup_norm_sampled(TrigPolynomial()) == 0.0);
    CHECK(sup_norm_sampled(TrigPolynomial::monomial(5, 2.0)) == doctest::Approx(2.0));
    TrigPolynomial p = TrigPolynomial::monomial(1) + TrigPolynomial::monomial(-1);
    CHECK(sup_norm_sampled(p) == doctest::Approx(2.0));
}
