#pragma once

// Divided-difference Schur multipliers: at finite dimension the double
// operator integral with kernel (g(x) - g(y)) / (x - y) acts entrywise in the
// pair of eigenbases.

#include "ssf/linalg.hpp"
#include "ssf/trig_polynomial.hpp"

#include <vector>

namespace ssf {

/// Below this |e^{i lambda} - e^{i mu}| the kernel uses the derivative.
inline constexpr double kDiagonalSwitch = 1e-8;

/// g(e^{it}) = int_0^t (f - mean f); g(1) = 0.
TrigPolynomial primitive_of(const TrigPolynomial& f);

/// d/dz g at z = e^{i mu}: sum_n g_n n e^{i(n-1)mu}.
Complex circle_derivative(const TrigPolynomial& g, double mu);

/// (g(e^{i lambda}) - g(e^{i mu})) / (e^{i lambda} - e^{i mu}), with the
/// derivative when the points nearly coincide.
Complex divided_difference(const TrigPolynomial& g, double lambda, double mu);

struct DOIKernel {
    std::vector<double> left_angles;
    std::vector<double> right_angles;
    ComplexMatrix kernel;  // rows follow left_angles, columns right_angles

    double max_abs() const { return kernel.cwiseAbs().maxCoeff(); }
};

DOIKernel doi_kernel(const TrigPolynomial& g, const SpectralDecomposition& left, const SpectralDecomposition& right);

/// V_s (K o (V_s^* X V_0)) V_0^*; equals g(Us) - g(U0) when X = Us - U0.
ComplexMatrix doi_apply(const TrigPolynomial& g, const ComplexMatrix& us, const ComplexMatrix& u0,
                        const ComplexMatrix& x);
ComplexMatrix doi_apply(const TrigPolynomial& g, const SpectralDecomposition& left,
                        const SpectralDecomposition& right, const ComplexMatrix& x);

struct SchurBoundReport {
    double lhs = 0.0;         // ||g(Us) - g(U0)||_2
    double rhs = 0.0;         // pi ||f||_inf ||Us - U0||_2
    double f_sup = 0.0;       // sampled
    int sample_points = 0;
    double mesh = 0.0;        // 2pi / sample_points
    double step_hs = 0.0;     // ||Us - U0||_2
    bool holds = false;       // lhs <= rhs + 1e-10
};

SchurBoundReport schur_bound_check(const TrigPolynomial& f, const ComplexMatrix& us, const ComplexMatrix& u0,
                                   int sample_points = 4096);

}  // namespace ssf
