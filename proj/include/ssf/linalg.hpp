#pragma once

// Dense complex linear algebra used throughout the library: Hermitian and
// unitary eigendecompositions, the principal logarithm of a unitary, the
// exponential path s -> e^{isA} U0, norms, and seeded random instances.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <vector>

namespace ssf {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// Eigenvalues closer than this are treated as one cluster.
inline constexpr double kClusterGap = 1e-10;

/// Default tolerance used when an operation requires a unitary argument.
double unitary_tolerance(Eigen::Index dim);

bool is_unitary(const ComplexMatrix& m, double tol);
bool is_hermitian(const ComplexMatrix& m, double tol);

/// Throws DimensionMismatch unless m is square and non-empty.
void require_square(const ComplexMatrix& m, const char* what);
void require_unitary(const ComplexMatrix& m, const char* what);

/// Maps an angle into (0, 2pi]; zero maps to 2pi.
double wrap_positive(double angle);
/// Maps an angle into (-pi, pi].
double wrap_symmetric(double angle);

struct HermitianDecomposition {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix vectors;            // eigencolumns
    bool identity_basis = false;      // vectors is exactly I

    Eigen::Index dim() const { return vectors.rows(); }

    ComplexMatrix reconstruct() const;

    /// V diag(f(lambda)) V*.
    template <class F>
    ComplexMatrix function(F&& f) const {
        const Eigen::Index n = dim();
        ComplexVector d(n);
        for (Eigen::Index k = 0; k < n; ++k) d(k) = Complex(f(eigenvalues[k]));
        if (identity_basis) return d.asDiagonal();
        return vectors * d.asDiagonal() * vectors.adjoint();
    }

    /// V diag(f(lambda)) V* x without forming the dim x dim product.
    template <class F>
    ComplexMatrix apply_function(F&& f, const ComplexMatrix& x) const {
        const Eigen::Index n = dim();
        ComplexVector d(n);
        for (Eigen::Index k = 0; k < n; ++k) d(k) = Complex(f(eigenvalues[k]));
        if (identity_basis) return d.asDiagonal() * x;
        ComplexMatrix y = vectors.adjoint() * x;
        return vectors * (d.asDiagonal() * y);
    }
};

/// Spectral data of a unitary: U = sum_k e^{i angles[k]} v_k v_k^*.
/// Angles lie in (0, 2pi], ascending, and eigenvalue 1 carries 2pi so the
/// cumulative spectral projection vanishes at t = 0.
struct SpectralDecomposition {
    std::vector<double> angles;
    ComplexMatrix vectors;
    double phase = 0.0;  // rotation used by the Cayley reduction

    Eigen::Index dim() const { return vectors.rows(); }

    ComplexMatrix reconstruct() const;
    /// E(t) = sum over angles <= t of v_k v_k^*.
    ComplexMatrix cumulative_projection(double t) const;

    /// sum_k f(angles[k]) v_k v_k^*.
    template <class F>
    ComplexMatrix function(F&& f) const {
        const Eigen::Index n = dim();
        ComplexVector d(n);
        for (Eigen::Index k = 0; k < n; ++k) d(k) = Complex(f(angles[k]));
        return vectors * d.asDiagonal() * vectors.adjoint();
    }
};

/// Cyclic complex Jacobi eigensolver for Hermitian matrices.
/// Throws NotHermitian if ||H - H*||_op > 1e-10 ||H||_op and NoConvergence
/// if the off-diagonal mass has not vanished after max_sweeps sweeps.
HermitianDecomposition herm_eig(const ComplexMatrix& h, int max_sweeps = 100);

/// Phase phi in (-pi, pi] placing -e^{i phi} at the midpoint of the largest
/// gap between consecutive eigenangles (first such gap on an ascending scan).
double choose_phase(std::span<const double> angles);
double choose_phase(const ComplexMatrix& u0);

/// i(I - e^{-i phi} U)(I + e^{-i phi} U)^{-1}; no spectral precondition check.
ComplexMatrix cayley_transform(const ComplexMatrix& u, double phi);
/// e^{i phi}(i - H)(i + H)^{-1}.
ComplexMatrix inverse_cayley_transform(const ComplexMatrix& h, double phi);

struct CayleyReduction {
    double phase = 0.0;
    ComplexMatrix hermitian;
};

/// The Hermitian matrix whose inverse Cayley transform, rotated by the
/// chosen phase, equals u.
CayleyReduction cayley_reduction(const ComplexMatrix& u);

SpectralDecomposition unitary_eig(const ComplexMatrix& u);

/// Principal logarithm: Hermitian A with spectrum in (-pi, pi] and e^{iA} = V.
/// Eigenvalue -1 maps to +pi.
ComplexMatrix log_unitary(const ComplexMatrix& v);

/// e^{isA} from a cached decomposition of A.
ComplexMatrix exp_i(const HermitianDecomposition& a, double s);

/// The path s -> U_s = e^{isA} U0 with a single cached decomposition of A.
class UnitaryPath {
public:
    UnitaryPath(ComplexMatrix u0, ComplexMatrix generator);
    UnitaryPath(ComplexMatrix u0, ComplexMatrix generator, HermitianDecomposition decomposition);

    ComplexMatrix at(double s) const;
    ComplexMatrix propagator(double s) const { return exp_i(decomposition_, s); }

    const ComplexMatrix& base() const { return u0_; }
    const ComplexMatrix& generator() const { return a_; }
    const HermitianDecomposition& generator_decomposition() const { return decomposition_; }
    Eigen::Index dim() const { return u0_.rows(); }

private:
    ComplexMatrix u0_;
    ComplexMatrix a_;
    HermitianDecomposition decomposition_;
};

ComplexMatrix unitary_path(const ComplexMatrix& u0, const ComplexMatrix& a, double s);

struct Norms {
    double op = 0.0;
    double hs = 0.0;
    double tr = 0.0;
};

Norms norms(const ComplexMatrix& m);
double op_norm(const ComplexMatrix& m);
double hs_norm(const ComplexMatrix& m);
double trace_norm(const ComplexMatrix& m);
Complex trace(const ComplexMatrix& m);

using Rng = std::mt19937_64;

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of diag(R) folded into Q.
ComplexMatrix haar_unitary(Rng& rng, Eigen::Index dim);
/// Hermitian matrix with i.i.d. complex Gaussian upper triangle.
ComplexMatrix random_hermitian(Rng& rng, Eigen::Index dim);

struct RandomPair {
    ComplexMatrix u0;
    ComplexMatrix a;
    ComplexMatrix u;
};

/// U0 Haar, A random Hermitian with ||A||_op = scale, U = e^{iA} U0.
/// Requires dim >= 1 and 0 < scale < pi.
RandomPair random_pair(std::uint64_t seed, Eigen::Index dim, double scale);

}  // namespace ssf
