#include "doctest.h"

#include "ssf/doi.hpp"

#include <cmath>

using namespace ssf;

TEST_CASE("primitive_of") {
    CHECK(primitive_of(TrigPolynomial::constant(3.0)).empty());

    const TrigPolynomial g = primitive_of(TrigPolynomial::monomial(1));
    for (double t : {0.0, 0.4, 2.9, kTwoPi}) {
        CHECK(std::abs(g.value(t) - (std::exp(kI * t) - 1.0) / kI) < 1e-15);
    }

    Rng rng(6);
    const TrigPolynomial f = random_trig_polynomial(rng, 6);
    const TrigPolynomial gf = primitive_of(f);
    const Complex mean = f.coefficient(0);
    // composite Simpson of f - mean on [0, t]
    for (double t : {0.5, 2.0, 5.5, kTwoPi}) {
        const int m = 20000;
        const double h = t / m;
        Complex s = (f.value(0.0) - mean) + (f.value(t) - mean);
        for (int j = 1; j < m; ++j) s += (j % 2 ? 4.0 : 2.0) * (f.value(j * h) - mean);
        s *= h / 3.0;
        CHECK(std::abs(gf.value(t) - s) < 1e-10);
    }
    CHECK(std::abs(gf.value(0.0)) < 1e-15);
}

TEST_CASE("divided differences") {
    const TrigPolynomial id = TrigPolynomial::monomial(1);
    Rng rng(9);
    const ComplexMatrix u = haar_unitary(rng, 4);
    const ComplexMatrix v = haar_unitary(rng, 4);
    const auto ku = doi_kernel(id, unitary_eig(u), unitary_eig(v));
    CHECK((ku.kernel - ComplexMatrix::Ones(4, 4)).norm() < 1e-12);

    const TrigPolynomial sq = TrigPolynomial::monomial(2);
    CHECK(std::abs(divided_difference(sq, 1.3, 1.3) - 2.0 * std::exp(kI * 1.3)) < 1e-15);

    const TrigPolynomial g = random_trig_polynomial(rng, 5);
    for (auto [l, m] : {std::pair{0.3, 2.0}, std::pair{5.0, 1.1}, std::pair{kTwoPi, 3.0}}) {
        const Complex direct = (g.value(l) - g.value(m)) / (std::exp(kI * l) - std::exp(kI * m));
        CHECK(std::abs(divided_difference(g, l, m) - direct) < 1e-12);
    }

    // near-diagonal entries approach the analytic limit
    for (double mu : {0.2, 3.0, 6.0}) {
        const Complex limit = divided_difference(g, mu, mu);
        const Complex near = divided_difference(g, mu + 1e-6, mu);
        CHECK(std::abs(near - limit) < 1e-5);
    }
}

TEST_CASE("doi_apply reproduces the functional-calculus difference") {
    Rng rng(12);
    for (int dim = 1; dim <= 12; ++dim) {
        const auto pair = random_pair(400 + dim, dim, 1.0);
        const ComplexMatrix x = pair.u - pair.u0;
        const TrigPolynomial g = random_trig_polynomial(rng, 6);
        const ComplexMatrix gu = g.evaluate(pair.u);
        const ComplexMatrix diff = gu - g.evaluate(pair.u0);
        CHECK((doi_apply(g, pair.u, pair.u0, x) - diff).norm() <= 1e-10 * (1.0 + gu.norm()));

        CHECK((doi_apply(TrigPolynomial::monomial(1), pair.u, pair.u0, x) - x).norm() < 1e-12);
        CHECK(doi_apply(TrigPolynomial::constant(2.0), pair.u, pair.u0, x).norm() == 0.0);
    }

    // shared eigenvalue: the diagonal limit must be used
    const ComplexMatrix u0 = haar_unitary(rng, 5);
    CHECK(doi_apply(primitive_of(random_trig_polynomial(rng, 3)), u0, u0, ComplexMatrix::Zero(5, 5)).norm() == 0.0);
}

TEST_CASE("kernel bound for primitives of mean-zero symbols") {
    Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const auto pair = random_pair(500 + trial, 6, 2.0);
        TrigPolynomial f = random_trig_polynomial(rng, 5);
        TrigPolynomial f0 = f;
        f0.add(0, -f.coefficient(0));
        const auto k = doi_kernel(primitive_of(f), unitary_eig(pair.u), unitary_eig(pair.u0));
        CHECK(k.max_abs() <= kPi / 2.0 * sup_norm_sampled(f0) + 1e-8);
    }
}

TEST_CASE("Schur bound") {
    const auto pair = random_pair(60, 5, 1.0);
    const auto zero = schur_bound_check(TrigPolynomial(), pair.u, pair.u0);
    CHECK(zero.lhs == 0.0);
    CHECK(zero.rhs == 0.0);
    CHECK(zero.holds);

    Rng rng(14);
    const TrigPolynomial f = random_trig_polynomial(rng, 4);
    const auto same = schur_bound_check(f, pair.u0, pair.u0);
    CHECK(same.lhs == 0.0);
    CHECK(same.holds);
    CHECK(same.sample_points == 4096);
    CHECK(same.mesh == doctest::Approx(kTwoPi / 4096));

    for (int trial = 0; trial < 50; ++trial) {
        const int dim = 2 + trial % 11;
        const auto p = random_pair(700 + trial, dim, 0.2 + 0.05 * trial);
        const auto rep = schur_bound_check(random_trig_polynomial(rng, 1 + trial % 6), p.u, p.u0);
        CHECK(rep.holds);
    }
}
