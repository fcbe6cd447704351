#include "ssf/doi.hpp"

#include "ssf/error.hpp"

#include <cmath>

namespace ssf {

TrigPolynomial primitive_of(const TrigPolynomial& f) {
    TrigPolynomial g;
    Complex at_zero = 0.0;
    for (const auto& [n, c] : f.coefficients()) {
        if (n == 0) continue;
        const Complex gn = c / (kI * static_cast<double>(n));
        g.add(n, gn);
        at_zero += gn;
    }
    g.add(0, -at_zero);
    return g;
}

Complex circle_derivative(const TrigPolynomial& g, double mu) {
    Complex s = 0.0;
    for (const auto& [n, c] : g.coefficients()) {
        if (n != 0) s += c * static_cast<double>(n) * std::exp(kI * ((n - 1) * mu));
    }
    return s;
}

Complex divided_difference(const TrigPolynomial& g, double lambda, double mu) {
    const Complex x = std::exp(kI * lambda);
    const Complex y = std::exp(kI * mu);
    if (std::abs(x - y) < kDiagonalSwitch) return circle_derivative(g, mu);
    return (g.value(lambda) - g.value(mu)) / (x - y);
}

DOIKernel doi_kernel(const TrigPolynomial& g, const SpectralDecomposition& left, const SpectralDecomposition& right) {
    DOIKernel out;
    out.left_angles = left.angles;
    out.right_angles = right.angles;
    const auto rows = static_cast<Eigen::Index>(left.angles.size());
    const auto cols = static_cast<Eigen::Index>(right.angles.size());

    std::vector<Complex> gl(left.angles.size());
    std::vector<Complex> gr(right.angles.size());
    for (std::size_t j = 0; j < gl.size(); ++j) gl[j] = g.value(left.angles[j]);
    for (std::size_t k = 0; k < gr.size(); ++k) gr[k] = g.value(right.angles[k]);

    out.kernel.resize(rows, cols);
    for (Eigen::Index k = 0; k < cols; ++k) {
        const double mu = right.angles[k];
        const Complex y = std::exp(kI * mu);
        for (Eigen::Index j = 0; j < rows; ++j) {
            const Complex x = std::exp(kI * left.angles[j]);
            out.kernel(j, k) = std::abs(x - y) < kDiagonalSwitch ? circle_derivative(g, mu) : (gl[j] - gr[k]) / (x - y);
        }
    }
    return out;
}

ComplexMatrix doi_apply(const TrigPolynomial& g, const SpectralDecomposition& left,
                        const SpectralDecomposition& right, const ComplexMatrix& x) {
    if (x.rows() != left.dim() || x.cols() != right.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "operand does not match the eigenbases");
    }
    const DOIKernel k = doi_kernel(g, left, right);
    const ComplexMatrix y = left.vectors.adjoint() * x * right.vectors;
    const ComplexMatrix z = k.kernel.cwiseProduct(y);
    return left.vectors * z * right.vectors.adjoint();
}

ComplexMatrix doi_apply(const TrigPolynomial& g, const ComplexMatrix& us, const ComplexMatrix& u0,
                        const ComplexMatrix& x) {
    require_unitary(us, "left unitary");
    require_unitary(u0, "right unitary");
    return doi_apply(g, unitary_eig(us), unitary_eig(u0), x);
}

SchurBoundReport schur_bound_check(const TrigPolynomial& f, const ComplexMatrix& us, const ComplexMatrix& u0,
                                   int sample_points) {
    require_unitary(us, "left unitary");
    require_unitary(u0, "right unitary");
    if (us.rows() != u0.rows()) throw Error(ErrorCode::DimensionMismatch, "unitaries differ in dimension");
    const TrigPolynomial g = primitive_of(f);
    SchurBoundReport rep;
    rep.sample_points = sample_points;
    rep.mesh = kTwoPi / sample_points;
    rep.f_sup = sup_norm_sampled(f, sample_points);
    rep.step_hs = (us - u0).norm();
    rep.lhs = (g.evaluate(us) - g.evaluate(u0)).norm();
    rep.rhs = kPi * rep.f_sup * rep.step_hs;
    rep.holds = rep.lhs <= rep.rhs + 1e-10;
    return rep;
}

}  // namespace ssf
