#pragma once

// Both sides of Tr{p(U) - p(U0) - d/ds p(U_s)|_{s=0}} = int p''(e^{it}) eta(t) dt.

#include "ssf/linalg.hpp"
#include "ssf/quadrature.hpp"
#include "ssf/spectral_shift.hpp"
#include "ssf/trig_polynomial.hpp"

namespace ssf {

inline constexpr int kDefaultSNodes = 64;

/// d/ds (U_s)^r for U_s = e^{isA} U0.
ComplexMatrix gateaux_monomial(const ComplexMatrix& u0, const ComplexMatrix& a, int r, double s);
/// Same, with the powers of U_s supplied by the caller.
ComplexMatrix gateaux_monomial(PowerCache& us_powers, const ComplexMatrix& a, int r);

ComplexMatrix gateaux_series(const ComplexMatrix& u0, const ComplexMatrix& a, const TrigPolynomial& p, double s);
ComplexMatrix gateaux_series(PowerCache& us_powers, const ComplexMatrix& a, const TrigPolynomial& p);

/// Operator-norm bound on the derivative terms with |n| > n_max:
/// sum_{|n| > n_max} |a_n| |n| ||A||.
double derivative_tail_bound(const TrigPolynomial& p, int n_max, double a_op);

/// Tr{p(U) - p(U0) - D} with D the derivative at s = 0; all powers by
/// multiplication. Throws PathMismatch unless U = e^{iA} U0 to dim 1e-10.
Complex lhs_trace(const ComplexMatrix& u0, const ComplexMatrix& u, const ComplexMatrix& a, const TrigPolynomial& p);

Complex rhs_integral(const ComplexMatrix& u0, const ComplexMatrix& a, const TrigPolynomial& p,
                     const QuadratureRule& s_rule);

struct VerificationReport {
    Complex lhs;
    Complex rhs;
    double abs_err = 0.0;
    double rel_err = 0.0;  // abs_err / (1 + |lhs|)
    int s_nodes_used = 0;
    bool pass = false;
    double tolerance = 0.0;
};

VerificationReport make_report(Complex lhs, Complex rhs, int s_nodes, double tol);

VerificationReport verify(const ComplexMatrix& u0, const ComplexMatrix& u, const ComplexMatrix& a,
                          const TrigPolynomial& p, double tol, int s_nodes = kDefaultSNodes);
/// Reuses the cached eta steps of `shift`.
VerificationReport verify(const SpectralShift& shift, const ComplexMatrix& u0, const ComplexMatrix& u,
                          const ComplexMatrix& a, const TrigPolynomial& p, double tol);

/// |rhs with n nodes - rhs with 2n nodes|.
double rhs_doubling_gap(const ComplexMatrix& u0, const ComplexMatrix& a, const TrigPolynomial& p,
                        int s_nodes = kDefaultSNodes);

/// First `terms` coefficients of (e^{it} - z)^{-1}: a_{-(k+1)} = z^k inside the
/// disc, a_k = -z^{-(k+1)} outside.
TrigPolynomial resolvent_series(Complex z, int terms);

/// Bound on the error both sides inherit from dropping terms >= `terms`.
double resolvent_tail_bound(Complex z, int terms, double a_op, double a_hs);

/// Smallest term count whose tail bound is below tol / 10.
int resolvent_terms(Complex z, double a_op, double a_hs, double tol);

struct ResolventReport {
    VerificationReport series;
    Complex direct_lhs;
    double series_gap = 0.0;  // |direct_lhs - series.lhs|
    int terms = 0;
    double tail_bound = 0.0;
    bool pass = false;
};

/// terms <= 0 picks the count from the tail bound.
ResolventReport resolvent_check(const ComplexMatrix& u0, const ComplexMatrix& u, const ComplexMatrix& a, Complex z,
                                int terms, double tol, int s_nodes = kDefaultSNodes);

/// x^{-2}(e^x - x - 1), continued by its series near 0.
double exp_remainder_ratio(double x);

/// [|r|(|r|-1)/2 + |r| ||A||^{-2}(e^{||A||} - ||A|| - 1)] ||A||_2^2.
double remainder_trace_norm_bound(int r, double a_op, double a_hs);

}  // namespace ssf
