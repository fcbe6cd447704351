#include "doctest.h"

#include "ssf/error.hpp"
#include "ssf/linalg.hpp"

#include <cmath>
#include <cstring>

using namespace ssf;

namespace {

ComplexMatrix diag_unitary(std::initializer_list<double> angles) {
    ComplexVector d(static_cast<Eigen::Index>(angles.size()));
    Eigen::Index k = 0;
    for (double t : angles) d(k++) = std::exp(kI * t);
    return d.asDiagonal();
}

// Exact reference for the phase rule: brute-force the angular distance from
// -e^{i phi} to the spectrum over a fine phi grid.
double min_distance(const std::vector<double>& angles, double phi) {
    double best = 1e9;
    for (double t : angles) best = std::min(best, std::abs(std::exp(kI * t) + std::exp(kI * phi)));
    return best;
}

}  // namespace

TEST_CASE("herm_eig on the zero matrix returns zeros and the identity basis") {
    const auto dec = herm_eig(ComplexMatrix::Zero(3, 3));
    CHECK(dec.eigenvalues == std::vector<double>{0.0, 0.0, 0.0});
    CHECK(dec.vectors.isApprox(ComplexMatrix::Identity(3, 3)));
    CHECK(dec.identity_basis);
}

TEST_CASE("herm_eig on a diagonal matrix") {
    ComplexMatrix h = ComplexMatrix::Zero(2, 2);
    h(0, 0) = -1.0;
    h(1, 1) = 2.0;
    const auto dec = herm_eig(h);
    CHECK(dec.eigenvalues[0] == -1.0);
    CHECK(dec.eigenvalues[1] == 2.0);

    h(0, 0) = 2.0;
    h(1, 1) = -1.0;
    const auto swapped = herm_eig(h);
    CHECK(swapped.eigenvalues[0] == -1.0);
    CHECK((swapped.vectors * ComplexVector::Unit(2, 0) - ComplexVector::Unit(2, 1)).norm() == 0.0);
}

TEST_CASE("herm_eig reconstructs random Hermitian matrices with small residuals") {
    Rng rng(11);
    for (int dim : {1, 2, 5, 8, 16, 40}) {
        const ComplexMatrix h = random_hermitian(rng, dim);
        const auto dec = herm_eig(h);
        CHECK(op_norm(dec.reconstruct() - h) <= dim * 1e-12 * std::max(1.0, op_norm(h)));
        CHECK(op_norm(dec.vectors.adjoint() * dec.vectors - ComplexMatrix::Identity(dim, dim)) <= 1e-12);
        const double hop = op_norm(h);
        for (int k = 0; k < dim; ++k) {
            const ComplexVector v = dec.vectors.col(k);
            CHECK((h * v - dec.eigenvalues[k] * v).norm() <= 10.0 * dim * 2.2e-16 * hop);
            if (k > 0) CHECK(dec.eigenvalues[k - 1] <= dec.eigenvalues[k]);
        }
    }
}

TEST_CASE("herm_eig rejects non-Hermitian input and enforces the sweep cap") {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    try {
        herm_eig(m);
        FAIL("expected NotHermitian");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotHermitian);
    }
    Rng rng(3);
    const ComplexMatrix h = random_hermitian(rng, 8);
    try {
        herm_eig(h, 1);
        FAIL("expected NoConvergence");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoConvergence);
    }
}

TEST_CASE("choose_phase picks the midpoint of the largest gap") {
    CHECK(choose_phase(ComplexMatrix::Identity(4, 4)) == doctest::Approx(0.0));

    const double phi = choose_phase(diag_unitary({0.0, kPi}));
    const Complex w = -std::exp(kI * phi);
    CHECK(std::abs(w - kI) < 1e-12);  // first gap on the ascending scan is (0, pi)

    const double phi2 = choose_phase(diag_unitary({0.1, 0.2}));
    const double expected = std::fmod((0.2 + 0.1 + kTwoPi) / 2.0, kTwoPi);
    CHECK(std::abs(std::exp(kI * (phi2 + kPi)) - std::exp(kI * expected)) < 1e-12);
    CHECK(phi2 > -kPi);
    CHECK(phi2 <= kPi);
}

TEST_CASE("choose_phase maximizes the distance to the spectrum") {
    Rng rng(5);
    std::uniform_real_distribution<double> uni(0.0, kTwoPi);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> angles;
        for (int k = 0; k < 5; ++k) angles.push_back(uni(rng));
        const double phi = choose_phase(angles);
        double best = 0.0;
        for (int j = 0; j < 20000; ++j) best = std::max(best, min_distance(angles, -kPi + kTwoPi * j / 20000.0));
        CHECK(min_distance(angles, phi) >= best - 1e-6);
    }
}

TEST_CASE("unitary_eig on simple diagonals") {
    const auto id = unitary_eig(ComplexMatrix::Identity(3, 3));
    for (double t : id.angles) CHECK(t == kTwoPi);
    CHECK(op_norm(id.vectors - ComplexMatrix::Identity(3, 3)) < 1e-14);

    ComplexMatrix u = ComplexMatrix::Zero(2, 2);
    u(0, 0) = kI;
    u(1, 1) = -kI;
    const auto dec = unitary_eig(u);
    CHECK(dec.angles[0] == doctest::Approx(kPi / 2).epsilon(1e-14));
    CHECK(dec.angles[1] == doctest::Approx(3 * kPi / 2).epsilon(1e-14));
}

TEST_CASE("unitary_eig reconstructs Haar unitaries") {
    Rng rng(17);
    for (int dim : {1, 3, 8, 16}) {
        const ComplexMatrix u = haar_unitary(rng, dim);
        const auto dec = unitary_eig(u);
        CHECK(op_norm(dec.reconstruct() - u) <= dim * 1e-12);
        CHECK(op_norm(dec.vectors.adjoint() * dec.vectors - ComplexMatrix::Identity(dim, dim)) <= 1e-12);
        for (std::size_t k = 0; k < dec.angles.size(); ++k) {
            CHECK(dec.angles[k] > 0.0);
            CHECK(dec.angles[k] <= kTwoPi);
        }
        CHECK(op_norm(dec.cumulative_projection(kTwoPi) - ComplexMatrix::Identity(dim, dim)) < 1e-12);
        CHECK(dec.cumulative_projection(0.0).norm() == 0.0);
    }
}

TEST_CASE("unitary_eig handles degenerate spectra") {
    Rng rng(23);
    const ComplexMatrix w = haar_unitary(rng, 6);
    const ComplexMatrix u = w * diag_unitary({1.0, 1.0, 1.0, 2.5, 2.5, 4.0}) * w.adjoint();
    const auto dec = unitary_eig(u);
    CHECK(op_norm(dec.reconstruct() - u) <= 6e-12);
    CHECK(op_norm(dec.vectors.adjoint() * dec.vectors - ComplexMatrix::Identity(6, 6)) <= 1e-12);
}

TEST_CASE("Cayley reduction reconstructs the unitary") {
    Rng rng(29);
    for (int dim : {2, 7, 12}) {
        const ComplexMatrix u = haar_unitary(rng, dim);
        const auto red = cayley_reduction(u);
        CHECK(is_hermitian(red.hermitian, dim * 1e-10));
        CHECK(op_norm(inverse_cayley_transform(red.hermitian, red.phase) - u) <= dim * 1e-10);
    }
}

TEST_CASE("log_unitary branch conventions") {
    CHECK(log_unitary(ComplexMatrix::Identity(3, 3)).norm() < 1e-14);

    ComplexMatrix minus_one(1, 1);
    minus_one(0, 0) = -1.0;
    CHECK(log_unitary(minus_one)(0, 0).real() == doctest::Approx(kPi).epsilon(1e-14));

    const ComplexMatrix v = diag_unitary({0.3, -2.9});
    const ComplexMatrix a = log_unitary(v);
    CHECK(std::abs(a(0, 0) - 0.3) < 1e-13);
    CHECK(std::abs(a(1, 1) + 2.9) < 1e-13);
    CHECK(op_norm(unitary_path(ComplexMatrix::Identity(2, 2), a, 1.0) - v) <= 2e-12);
    const double lhs = a.norm();
    const double rhs = kPi / 2 * (v - ComplexMatrix::Identity(2, 2)).norm() + 2e-10;
    CHECK(lhs <= rhs);
}

TEST_CASE("log/exp roundtrip and the Hilbert-Schmidt bound on random pairs") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const int dim = 1 + static_cast<int>(seed % 16);
        const auto pair = random_pair(seed, dim, 0.2 + 2.8 * (seed % 7) / 7.0);
        const ComplexMatrix v = pair.u * pair.u0.adjoint();
        const ComplexMatrix a = log_unitary(v);
        CHECK(op_norm(unitary_path(ComplexMatrix::Identity(dim, dim), a, 1.0) - v) <= dim * 1e-12);
        CHECK(op_norm(a - pair.a) <= dim * 1e-10);
        CHECK(a.norm() <= kPi / 2 * (pair.u - pair.u0).norm() + dim * 1e-10);
    }
}

TEST_CASE("unitary_path basics") {
    const auto pair = random_pair(4, 5, 1.0);
    CHECK(unitary_path(pair.u0, pair.a, 0.0) == pair.u0);
    CHECK(op_norm(unitary_path(pair.u0, pair.a, 1.0) - pair.u) < 1e-13);
    const UnitaryPath path(pair.u0, pair.a);
    CHECK(is_unitary(path.at(0.37), 5e-12));

    ComplexMatrix u0(1, 1), a(1, 1);
    u0(0, 0) = std::exp(kI * 0.4);
    a(0, 0) = 1.3;
    CHECK(std::abs(unitary_path(u0, a, 0.6)(0, 0) - std::exp(kI * (0.6 * 1.3 + 0.4))) < 1e-15);
}

TEST_CASE("norms of simple and random matrices") {
    const auto ni = norms(ComplexMatrix::Identity(4, 4));
    CHECK(ni.op == doctest::Approx(1.0));
    CHECK(ni.hs == doctest::Approx(2.0));
    CHECK(ni.tr == doctest::Approx(4.0));
    CHECK(trace(ComplexMatrix::Identity(4, 4)) == Complex(4.0, 0.0));

    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = 3.0;
    d(1, 1) = -4.0;
    const auto nd = norms(d);
    CHECK(nd.op == doctest::Approx(4.0));
    CHECK(nd.hs == doctest::Approx(5.0));
    CHECK(nd.tr == doctest::Approx(7.0));
    CHECK(trace(d) == Complex(-1.0, 0.0));

    Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix m = ComplexMatrix::Random(6, 6);
        const auto n = norms(m);
        CHECK(n.tr >= n.hs - 1e-12);
        CHECK(n.hs >= n.op - 1e-12);
        CHECK(std::abs(trace(m)) <= n.tr + 1e-12);
    }
}

TEST_CASE("random_pair is deterministic and scaled") {
    const auto p1 = random_pair(99, 7, 1.5);
    const auto p2 = random_pair(99, 7, 1.5);
    CHECK(std::memcmp(p1.u.data(), p2.u.data(), sizeof(Complex) * 49) == 0);
    CHECK(std::memcmp(p1.a.data(), p2.a.data(), sizeof(Complex) * 49) == 0);
    CHECK(op_norm(p1.a) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(is_unitary(p1.u0, 1e-12));

    const auto tiny = random_pair(99, 7, 1e-9);
    CHECK((tiny.u - tiny.u0).norm() < 1e-8);
}

TEST_CASE("preconditions raise typed errors") {
    ComplexMatrix not_unitary = ComplexMatrix::Identity(3, 3);
    not_unitary(0, 0) = 2.0;
    CHECK_THROWS_AS(unitary_eig(not_unitary), Error);
    try {
        log_unitary(not_unitary);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotUnitary);
    }
    try {
        random_pair(1, 0, 1.0);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidArgument);
    }
}
