#include "ssf/trace_formula.hpp"

#include "ssf/error.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace ssf {

namespace {

constexpr int kMaxResolventTerms = 20000;

void require_path(const ComplexMatrix& u0, const ComplexMatrix& u, const ComplexMatrix& a) {
    require_unitary(u0, "U0");
    require_square(a, "A");
    if (u.rows() != u0.rows() || u.cols() != u0.cols() || a.rows() != u0.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "U, U0 and A differ in dimension");
    }
    const double tol = static_cast<double>(u0.rows()) * 1e-10;
    const ComplexMatrix gap = u - unitary_path(u0, a, 1.0);
    if (gap.norm() > tol && op_norm(gap) > tol) {
        throw Error(ErrorCode::PathMismatch, "U differs from e^{iA} U0");
    }
}

}  // namespace

ComplexMatrix gateaux_monomial(PowerCache& us, const ComplexMatrix& a, int r) {
    const Eigen::Index d = us.dim();
    ComplexMatrix out = ComplexMatrix::Zero(d, d);
    const ComplexMatrix ia = kI * a;
    if (r >= 1) {
        for (int k = 0; k < r; ++k) out += us.power(r - k - 1) * ia * us.power(k + 1);
    } else if (r <= -1) {
        const int m = -r;
        for (int k = 0; k < m; ++k) out -= us.power(-(m - k)) * ia * us.power(-k);
    }
    return out;
}

ComplexMatrix gateaux_monomial(const ComplexMatrix& u0, const ComplexMatrix& a, int r, double s) {
    PowerCache us(unitary_path(u0, a, s));
    return gateaux_monomial(us, a, r);
}

ComplexMatrix gateaux_series(PowerCache& us, const ComplexMatrix& a, const TrigPolynomial& p) {
    const Eigen::Index d = us.dim();
    ComplexMatrix out = ComplexMatrix::Zero(d, d);
    for (const auto& [n, c] : p.coefficients()) {
        if (n != 0) out += c * gateaux_monomial(us, a, n);
    }
    return out;
}

ComplexMatrix gateaux_series(const ComplexMatrix& u0, const ComplexMatrix& a, const TrigPolynomial& p, double s) {
    PowerCache us(unitary_path(u0, a, s));
    return gateaux_series(us, a, p);
}

double derivative_tail_bound(const TrigPolynomial& p, int n_max, double a_op) {
    double s = 0.0;
    for (const auto& [n, c] : p.coefficients()) {
        if (std::abs(n) > n_max) s += std::abs(c) * std::abs(n);
    }
    return s * a_op;
}

Complex lhs_trace(const ComplexMatrix& u0, const ComplexMatrix& u, const ComplexMatrix& a, const TrigPolynomial& p) {
    require_path(u0, u, a);
    PowerCache u_pow(u);
    PowerCache u0_pow(u0);
    const ComplexMatrix remainder = p.evaluate(u_pow) - p.evaluate(u0_pow) - gateaux_series(u0_pow, a, p);
    return remainder.trace();
}

Complex rhs_integral(const ComplexMatrix& u0, const ComplexMatrix& a, const TrigPolynomial& p,
                     const QuadratureRule& s_rule) {
    return SpectralShift(u0, a, s_rule).integrate(p);
}

VerificationReport make_report(Complex lhs, Complex rhs, int s_nodes, double tol) {
    VerificationReport rep;
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.abs_err = std::abs(lhs - rhs);
    rep.rel_err = rep.abs_err / (1.0 + std::abs(lhs));
    rep.s_nodes_used = s_nodes;
    rep.tolerance = tol;
    rep.pass = rep.abs_err <= tol * (1.0 + std::abs(lhs));
    return rep;
}

VerificationReport verify(const SpectralShift& shift, const ComplexMatrix& u0, const ComplexMatrix& u,
                          const ComplexMatrix& a, const TrigPolynomial& p, double tol) {
    const Complex lhs = lhs_trace(u0, u, a, p);
    const Complex rhs = shift.integrate(p);
    return make_report(lhs, rhs, static_cast<int>(shift.rule().size()), tol);
}

VerificationReport verify(const ComplexMatrix& u0, const ComplexMatrix& u, const ComplexMatrix& a,
                          const TrigPolynomial& p, double tol, int s_nodes) {
    const Complex lhs = lhs_trace(u0, u, a, p);
    const Complex rhs = rhs_integral(u0, a, p, gauss_legendre(s_nodes));
    return make_report(lhs, rhs, s_nodes, tol);
}

double rhs_doubling_gap(const ComplexMatrix& u0, const ComplexMatrix& a, const TrigPolynomial& p, int s_nodes) {
    const Complex coarse = rhs_integral(u0, a, p, gauss_legendre(s_nodes));
    const Complex fine = rhs_integral(u0, a, p, gauss_legendre(2 * s_nodes));
    return std::abs(coarse - fine);
}

namespace {

void require_off_circle(Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw Error(ErrorCode::InvalidArgument, "resolvent point is not finite");
    }
    if (std::abs(std::abs(z) - 1.0) < 1e-6) {
        throw Error(ErrorCode::OnUnitCircle, "resolvent point lies on the unit circle");
    }
}

// Harmonic index and |coefficient| of the k-th expansion term.
std::pair<int, double> resolvent_term(Complex z, int k) {
    const double rho = std::abs(z);
    if (rho < 1.0) return {-(k + 1), std::pow(rho, k)};
    return {k, std::pow(1.0 / rho, k + 1)};
}

double term_weight(int n, double a_op, double a_hs) {
    // The larger of the left-side trace-norm bound and the right-side
    // n^2 ||eta0||_1 bound for one harmonic.
    const double lhs = remainder_trace_norm_bound(n, a_op, a_hs);
    const double rhs = static_cast<double>(n) * n * (kPi / 2.0) * a_hs * a_hs;
    return std::max(lhs, rhs);
}

}  // namespace

TrigPolynomial resolvent_series(Complex z, int terms) {
    require_off_circle(z);
    if (terms < 1) throw Error(ErrorCode::InvalidArgument, "resolvent series needs at least one term");
    TrigPolynomial p;
    if (std::abs(z) < 1.0) {
        Complex zk = 1.0;
        for (int k = 0; k < terms; ++k) {
            p.add(-(k + 1), zk);
            zk *= z;
        }
    } else {
        const Complex w = 1.0 / z;
        Complex wk = w;
        for (int k = 0; k < terms; ++k) {
            p.add(k, -wk);
            wk *= w;
        }
    }
    return p;
}

double resolvent_tail_bound(Complex z, int terms, double a_op, double a_hs) {
    require_off_circle(z);
    if (z == Complex(0.0, 0.0)) return 0.0;
    // Term ratios decrease towards |z| (or 1/|z|), so once a ratio is below
    // one the rest is dominated by a geometric series.
    double tail = 0.0;
    for (int k = terms; k < terms + 1000000; ++k) {
        const auto [n, c] = resolvent_term(z, k);
        const auto [n_next, c_next] = resolvent_term(z, k + 1);
        const double term = c * term_weight(n, a_op, a_hs);
        const double next = c_next * term_weight(n_next, a_op, a_hs);
        tail += term;
        if (term == 0.0) break;
        const double ratio = next / term;
        if (ratio < 1.0 && term <= 1e-18 * tail) {
            tail += next / (1.0 - ratio);
            break;
        }
    }
    return tail;
}

int resolvent_terms(Complex z, double a_op, double a_hs, double tol) {
    require_off_circle(z);
    if (z == Complex(0.0, 0.0) || a_hs == 0.0) return 1;
    // term weights grow polynomially; bisection on the monotone tail
    int lo = 1;
    int hi = 1;
    while (resolvent_tail_bound(z, hi, a_op, a_hs) >= tol / 10.0) {
        hi *= 2;
        if (hi > kMaxResolventTerms) {
            throw Error(ErrorCode::NoConvergence, "resolvent expansion needs too many terms");
        }
    }
    while (lo < hi) {
        const int mid = lo + (hi - lo) / 2;
        if (resolvent_tail_bound(z, mid, a_op, a_hs) < tol / 10.0) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return lo;
}

ResolventReport resolvent_check(const ComplexMatrix& u0, const ComplexMatrix& u, const ComplexMatrix& a, Complex z,
                                int terms, double tol, int s_nodes) {
    require_off_circle(z);
    const Norms an = norms(a);
    ResolventReport rep;
    rep.terms = terms > 0 ? terms : resolvent_terms(z, an.op, an.hs, tol);
    rep.tail_bound = resolvent_tail_bound(z, rep.terms, an.op, an.hs);

    const TrigPolynomial p = resolvent_series(z, rep.terms);
    rep.series = verify(u0, u, a, p, tol, s_nodes);

    const Eigen::Index d = u0.rows();
    const ComplexMatrix eye = ComplexMatrix::Identity(d, d);
    const ComplexMatrix r = (u - z * eye).partialPivLu().solve(eye);
    const ComplexMatrix r0 = (u0 - z * eye).partialPivLu().solve(eye);
    // d/ds (U_s - z)^{-1} = -R0 (iA U0) R0
    const ComplexMatrix direct = r - r0 + r0 * (kI * a * u0) * r0;
    rep.direct_lhs = direct.trace();
    rep.series_gap = std::abs(rep.direct_lhs - rep.series.lhs);
    rep.pass = rep.series.pass && rep.series_gap <= tol * (1.0 + std::abs(rep.direct_lhs));
    return rep;
}

double exp_remainder_ratio(double x) {
    if (std::abs(x) > 1e-4) return (std::exp(x) - x - 1.0) / (x * x);
    return 0.5 + x / 6.0 + x * x / 24.0;
}

double remainder_trace_norm_bound(int r, double a_op, double a_hs) {
    const double m = std::abs(r);
    return (m * (m - 1.0) / 2.0 + m * exp_remainder_ratio(a_op)) * a_hs * a_hs;
}

}  // namespace ssf
