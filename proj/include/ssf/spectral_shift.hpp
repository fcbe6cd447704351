#pragma once

// eta(t) = int_0^1 Tr{A [E_0(t) - E_s(t)]} ds, exact in t and Gauss-Legendre in s.

#include "ssf/linalg.hpp"
#include "ssf/quadrature.hpp"
#include "ssf/step_function.hpp"
#include "ssf/trig_polynomial.hpp"

#include <vector>

namespace ssf {

/// t -> Tr{W E(t)} = sum over angles <= t of v_k^* W v_k.
/// If imag_residue is given it receives max_k |Im v_k^* W v_k|.
StepFunction weighted_measure_step(const SpectralDecomposition& dec, const ComplexMatrix& w,
                                   double* imag_residue = nullptr);

/// t -> Tr{A [E_0(t) - E_s(t)]}.
StepFunction eta_step_at_s(const SpectralDecomposition& u0dec, const SpectralDecomposition& usdec,
                           const ComplexMatrix& a);

/// int_0^{2pi} (d^2/dt^2 e^{irt}) step(t) dt, exact per cell; 0 for r = 0.
Complex integrate_against(const StepFunction& step, int r);

/// int_0^{2pi} e^{int} step(t) dt, exact per cell.
Complex fourier_against(const StepFunction& step, int n);

struct EtaProfile {
    std::vector<double> grid;
    std::vector<double> eta;
    std::vector<double> eta0;
    QuadratureRule s_rule;
    double mean = 0.0;
    double l1_eta0 = 0.0;        // |eta0| integrated as piecewise-linear on the grid
    double l1_eta0_exact = 0.0;  // |eta0| integrated cell by cell on the step function
    double imag_residue = 0.0;
};

/// Per-node step functions for one (U0, A) pair, cached so several
/// polynomials and harmonics reuse the same decompositions.
class SpectralShift {
public:
    SpectralShift(const ComplexMatrix& u0, const ComplexMatrix& a, QuadratureRule rule);
    SpectralShift(const UnitaryPath& path, QuadratureRule rule);

    const QuadratureRule& rule() const { return rule_; }
    const std::vector<StepFunction>& node_steps() const { return steps_; }
    double imag_residue() const { return imag_residue_; }

    /// Quadrature value of eta at t (accumulated in node order).
    double value(double t) const;
    /// sum_m w_m step_m as a single step function.
    StepFunction eta_step() const;
    double mean() const;

    /// int (d^2/dt^2 e^{irt}) eta(t) dt.
    Complex second_derivative_integral(int r) const;
    /// int (d^2/dt^2 p(e^{it})) eta(t) dt.
    Complex integrate(const TrigPolynomial& p) const;
    /// int e^{int} eta(t) dt; throws ZeroHarmonic for n = 0.
    Complex fourier(int n) const;

    /// Uniform grid of grid_size points covering [0, 2pi] including both ends.
    EtaProfile profile(int grid_size) const;

private:
    void build(const UnitaryPath& path);

    QuadratureRule rule_;
    std::vector<StepFunction> steps_;
    double imag_residue_ = 0.0;
};

EtaProfile eta_profile(const ComplexMatrix& u0, const ComplexMatrix& a, int grid_size,
                       const QuadratureRule& s_rule);

Complex eta_fourier(const ComplexMatrix& u0, const ComplexMatrix& a, int n, const QuadratureRule& s_rule);

/// Exact L1 norm of |f - c| over [0, 2pi].
double l1_distance(const StepFunction& f, double c);

}  // namespace ssf
