#include "ssf/linalg.hpp"

#include "ssf/error.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/Jacobi>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace ssf {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Eigenvalue -1 must land on +pi; anything this close to -pi is treated as -1.
constexpr double kBranchSnap = 1e-13;

constexpr double kHermitianFloor = 64.0 * kEps;

std::vector<Eigen::Index> ascending_order(const std::vector<double>& values) {
    std::vector<Eigen::Index> order(values.size());
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index x, Eigen::Index y) { return values[x] < values[y]; });
    return order;
}

// Modified Gram-Schmidt inside each run of values closer than kClusterGap.
void reorthonormalize_clusters(const std::vector<double>& values, ComplexMatrix& vectors) {
    const auto n = static_cast<Eigen::Index>(values.size());
    Eigen::Index start = 0;
    while (start < n) {
        Eigen::Index end = start + 1;
        while (end < n && values[end] - values[end - 1] < kClusterGap) ++end;
        for (Eigen::Index j = start + 1; j < end; ++j) {
            for (Eigen::Index i = start; i < j; ++i) {
                const Complex proj = vectors.col(i).dot(vectors.col(j));
                vectors.col(j) -= proj * vectors.col(i);
            }
            vectors.col(j).normalize();
        }
        start = end;
    }
}

}  // namespace

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::NotUnitary: return "NotUnitary";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::ZeroHarmonic: return "ZeroHarmonic";
        case ErrorCode::PathMismatch: return "PathMismatch";
        case ErrorCode::OnUnitCircle: return "OnUnitCircle";
        case ErrorCode::PhaseTooClose: return "PhaseTooClose";
        case ErrorCode::BadWindow: return "BadWindow";
    }
    return "Unknown";
}

double unitary_tolerance(Eigen::Index dim) {
    return 1e-9 * static_cast<double>(std::max<Eigen::Index>(dim, 1));
}

bool is_unitary(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols() || m.rows() == 0) return false;
    if (!m.allFinite()) return false;
    const ComplexMatrix defect = m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols());
    if (defect.norm() <= tol) return true;
    return op_norm(defect) <= tol;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols() || m.rows() == 0) return false;
    if (!m.allFinite()) return false;
    const ComplexMatrix defect = m - m.adjoint();
    if (defect.norm() <= tol) return true;
    return op_norm(defect) <= tol;
}

void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() == 0 || m.rows() != m.cols()) {
        throw Error(ErrorCode::DimensionMismatch,
                    std::string(what) + " must be a non-empty square matrix (got " +
                        std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ")");
    }
}

void require_unitary(const ComplexMatrix& m, const char* what) {
    require_square(m, what);
    if (!is_unitary(m, unitary_tolerance(m.rows()))) {
        throw Error(ErrorCode::NotUnitary, std::string(what) + " is not unitary");
    }
}

double wrap_positive(double angle) {
    double y = std::fmod(angle, kTwoPi);
    if (y <= 0.0) y += kTwoPi;
    return y;
}

double wrap_symmetric(double angle) {
    double y = std::fmod(angle, kTwoPi);
    if (y <= -kPi) y += kTwoPi;
    if (y > kPi) y -= kTwoPi;
    return y;
}

ComplexMatrix HermitianDecomposition::reconstruct() const {
    return function([](double x) { return x; });
}

ComplexMatrix SpectralDecomposition::reconstruct() const {
    return function([](double t) { return std::exp(kI * t); });
}

ComplexMatrix SpectralDecomposition::cumulative_projection(double t) const {
    return function([t](double theta) { return theta <= t ? 1.0 : 0.0; });
}

HermitianDecomposition herm_eig(const ComplexMatrix& h, int max_sweeps) {
    require_square(h, "herm_eig input");
    const Eigen::Index n = h.rows();
    if (!h.allFinite()) throw Error(ErrorCode::InvalidArgument, "herm_eig input has non-finite entries");

    // Cheap Frobenius test first; fall back to operator norms only when it fails.
    // The absolute floor keeps roundoff-sized inputs (H ~ 1e-16) acceptable.
    const ComplexMatrix skew = h - h.adjoint();
    const double skew_f = skew.norm();
    if (skew_f > 1e-10 * h.norm() / std::sqrt(static_cast<double>(n)) + kHermitianFloor) {
        if (op_norm(skew) > 1e-10 * op_norm(h) + kHermitianFloor) {
            throw Error(ErrorCode::NotHermitian, "herm_eig input is not Hermitian");
        }
    }

    ComplexMatrix a = 0.5 * (h + h.adjoint());
    for (Eigen::Index k = 0; k < n; ++k) a(k, k) = a(k, k).real();
    ComplexMatrix v = ComplexMatrix::Identity(n, n);

    const double floor = 1e-2 * kEps * a.norm();
    bool rotated_any = false;
    bool converged = false;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (Eigen::Index q = 1; q < n; ++q) {
            for (Eigen::Index p = 0; p < q; ++p) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                if (mag <= std::max(0.5 * kEps * std::sqrt(std::abs(app * aqq)), floor)) continue;

                Eigen::JacobiRotation<Complex> rot;
                rot.makeJacobi(app, apq, aqq);
                a.applyOnTheLeft(p, q, rot.adjoint());
                a.applyOnTheRight(p, q, rot);
                v.applyOnTheRight(p, q, rot);
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                rotated = true;
            }
        }
        rotated_any = rotated_any || rotated;
        if (!rotated) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw Error(ErrorCode::NoConvergence,
                    "Jacobi sweeps exceeded the cap of " + std::to_string(max_sweeps));
    }

    std::vector<double> diag(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) diag[k] = a(k, k).real();
    const auto order = ascending_order(diag);

    HermitianDecomposition out;
    out.eigenvalues.resize(static_cast<std::size_t>(n));
    out.vectors.resize(n, n);
    bool identity_order = true;
    for (Eigen::Index k = 0; k < n; ++k) {
        out.eigenvalues[k] = diag[order[k]];
        out.vectors.col(k) = v.col(order[k]);
        identity_order = identity_order && order[k] == k;
    }
    if (rotated_any) {
        reorthonormalize_clusters(out.eigenvalues, out.vectors);
    } else if (!identity_order) {
        // A pure permutation; keep the columns exact.
        rotated_any = true;
    }
    out.identity_basis = !rotated_any;
    return out;
}

double choose_phase(std::span<const double> angles) {
    if (angles.empty()) throw Error(ErrorCode::InvalidArgument, "choose_phase needs at least one angle");
    std::vector<double> a;
    a.reserve(angles.size());
    for (double t : angles) {
        double x = std::fmod(t, kTwoPi);
        if (x < 0.0) x += kTwoPi;
        if (x >= kTwoPi) x = 0.0;
        a.push_back(x);
    }
    std::sort(a.begin(), a.end());

    double best_gap = -1.0;
    double best_mid = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double next = k + 1 < a.size() ? a[k + 1] : a.front() + kTwoPi;
        const double gap = next - a[k];
        if (gap > best_gap + 1e-12) {
            best_gap = gap;
            best_mid = a[k] + 0.5 * gap;
        }
    }
    // -e^{i phi} = e^{i mid}
    return wrap_symmetric(best_mid - kPi);
}

double choose_phase(const ComplexMatrix& u0) {
    require_unitary(u0, "choose_phase input");
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(u0, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::NoConvergence, "eigenvalue estimate for phase selection failed");
    }
    std::vector<double> angles;
    angles.reserve(static_cast<std::size_t>(u0.rows()));
    for (Eigen::Index k = 0; k < u0.rows(); ++k) angles.push_back(std::arg(solver.eigenvalues()(k)));
    return choose_phase(angles);
}

ComplexMatrix cayley_transform(const ComplexMatrix& u, double phi) {
    const Eigen::Index n = u.rows();
    const ComplexMatrix eye = ComplexMatrix::Identity(n, n);
    const ComplexMatrix rotated = std::exp(-kI * phi) * u;
    // (I - U')(I + U')^{-1} = 2(I + U')^{-1} - I
    const ComplexMatrix inv = (eye + rotated).partialPivLu().solve(eye);
    return kI * (2.0 * inv - eye);
}

ComplexMatrix inverse_cayley_transform(const ComplexMatrix& h, double phi) {
    const Eigen::Index n = h.rows();
    const ComplexMatrix eye = ComplexMatrix::Identity(n, n);
    // (i - H)(i + H)^{-1} = 2i(i + H)^{-1} - I
    const ComplexMatrix inv = (kI * eye + h).partialPivLu().solve(eye);
    return std::exp(kI * phi) * (2.0 * kI * inv - eye);
}

CayleyReduction cayley_reduction(const ComplexMatrix& u) {
    CayleyReduction out;
    out.phase = choose_phase(u);
    out.hermitian = cayley_transform(u, out.phase);
    return out;
}

SpectralDecomposition unitary_eig(const ComplexMatrix& u) {
    const CayleyReduction reduction = cayley_reduction(u);
    const HermitianDecomposition hdec = herm_eig(reduction.hermitian);
    const Eigen::Index n = u.rows();
    const Complex rotation = std::exp(kI * reduction.phase);

    std::vector<double> angles(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) {
        const double h = hdec.eigenvalues[k];
        angles[k] = wrap_positive(std::arg(rotation * (kI - h) / (kI + h)));
    }
    const auto order = ascending_order(angles);

    SpectralDecomposition out;
    out.phase = reduction.phase;
    out.angles.resize(static_cast<std::size_t>(n));
    out.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.angles[k] = angles[order[k]];
        out.vectors.col(k) = hdec.vectors.col(order[k]);
    }
    reorthonormalize_clusters(out.angles, out.vectors);
    return out;
}

ComplexMatrix log_unitary(const ComplexMatrix& v) {
    const SpectralDecomposition dec = unitary_eig(v);
    ComplexMatrix a = dec.function([](double theta) {
        double x = theta > kPi ? theta - kTwoPi : theta;
        if (x <= -kPi + kBranchSnap) x = kPi;
        return x;
    });
    return 0.5 * (a + a.adjoint());
}

ComplexMatrix exp_i(const HermitianDecomposition& a, double s) {
    return a.function([s](double lambda) { return std::exp(kI * (s * lambda)); });
}

UnitaryPath::UnitaryPath(ComplexMatrix u0, ComplexMatrix generator)
    : u0_(std::move(u0)), a_(std::move(generator)) {
    require_unitary(u0_, "path base point");
    require_square(a_, "path generator");
    if (a_.rows() != u0_.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "path generator and base point differ in dimension");
    }
    decomposition_ = herm_eig(a_);
}

UnitaryPath::UnitaryPath(ComplexMatrix u0, ComplexMatrix generator, HermitianDecomposition decomposition)
    : u0_(std::move(u0)), a_(std::move(generator)), decomposition_(std::move(decomposition)) {
    require_unitary(u0_, "path base point");
    if (a_.rows() != u0_.rows() || decomposition_.dim() != u0_.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "path generator and base point differ in dimension");
    }
}

ComplexMatrix UnitaryPath::at(double s) const {
    if (s == 0.0) return u0_;
    return exp_i(decomposition_, s) * u0_;
}

ComplexMatrix unitary_path(const ComplexMatrix& u0, const ComplexMatrix& a, double s) {
    return UnitaryPath(u0, a).at(s);
}

Norms norms(const ComplexMatrix& m) {
    Norms out;
    out.hs = m.norm();
    if (m.size() == 0) return out;
    Eigen::BDCSVD<ComplexMatrix> svd(m);
    const Eigen::VectorXd& sv = svd.singularValues();
    out.op = sv.size() > 0 ? sv(0) : 0.0;
    out.tr = sv.sum();
    return out;
}

double op_norm(const ComplexMatrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::BDCSVD<ComplexMatrix> svd(m);
    return svd.singularValues()(0);
}

double hs_norm(const ComplexMatrix& m) { return m.norm(); }

double trace_norm(const ComplexMatrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::BDCSVD<ComplexMatrix> svd(m);
    return svd.singularValues().sum();
}

Complex trace(const ComplexMatrix& m) { return m.trace(); }

namespace {

ComplexMatrix gaussian_matrix(Rng& rng, Eigen::Index dim) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix z(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            z(i, j) = Complex(re, im) / std::sqrt(2.0);
        }
    }
    return z;
}

}  // namespace

ComplexMatrix haar_unitary(Rng& rng, Eigen::Index dim) {
    const ComplexMatrix z = gaussian_matrix(rng, dim);
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix& r = qr.matrixQR();
    for (Eigen::Index j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        if (mag > 0.0) q.col(j) *= d / mag;
    }
    return q;
}

ComplexMatrix random_hermitian(Rng& rng, Eigen::Index dim) {
    const ComplexMatrix z = gaussian_matrix(rng, dim);
    ComplexMatrix h = 0.5 * (z + z.adjoint());
    for (Eigen::Index k = 0; k < dim; ++k) h(k, k) = h(k, k).real();
    return h;
}

RandomPair random_pair(std::uint64_t seed, Eigen::Index dim, double scale) {
    if (dim < 1) throw Error(ErrorCode::InvalidArgument, "random_pair needs dim >= 1");
    if (!(scale > 0.0 && scale < kPi)) {
        throw Error(ErrorCode::InvalidArgument, "random_pair needs 0 < scale < pi");
    }
    Rng rng(seed);
    RandomPair out;
    out.u0 = haar_unitary(rng, dim);

    HermitianDecomposition dec = herm_eig(random_hermitian(rng, dim));
    const double largest = std::max(std::abs(dec.eigenvalues.front()), std::abs(dec.eigenvalues.back()));
    const double factor = largest > 0.0 ? scale / largest : 0.0;
    for (double& x : dec.eigenvalues) x *= factor;
    if (largest == 0.0) {
        std::fill(dec.eigenvalues.begin(), dec.eigenvalues.end(), scale);
    }
    ComplexMatrix a = dec.reconstruct();
    out.a = 0.5 * (a + a.adjoint());
    out.u = exp_i(dec, 1.0) * out.u0;
    return out;
}

}  // namespace ssf
