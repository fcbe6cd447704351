#pragma once

// Finite-rank reduction: Cayley transforms with a phase rotation, spectral
// window projections built from a self-adjoint H0, estimate audits, and the
// compressed model (U0P, AP, UP) living in the coordinates of ran P.

#include "ssf/linalg.hpp"
#include "ssf/trig_polynomial.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ssf {

/// i(I - e^{-i phi} U0)(I + e^{-i phi} U0)^{-1}, made exactly Hermitian.
/// Throws PhaseTooClose if -e^{i phi} is within 1e-6 of the spectrum.
ComplexMatrix cayley_forward(const ComplexMatrix& u0, double phi);
/// e^{i phi}(i - H0)(i + H0)^{-1}.
ComplexMatrix cayley_inverse(const ComplexMatrix& h0, double phi);

struct ProjectionParams {
    int L = 0;
    double a = 0.0;
    int n = 0;
    double epsilon = 0.0;  // L a / sqrt(n)
};

struct ProjectionBasis {
    Eigen::Index ambient_dim = 0;
    ComplexMatrix columns;  // ambient x rank, orthonormal
    ProjectionParams params;

    Eigen::Index rank() const { return columns.cols(); }

    static ProjectionBasis identity(Eigen::Index dim);

    /// ||P^perp v||.
    double complement_norm(const ComplexVector& v) const;
    /// ||P^perp X||_2.
    double complement_hs(const ComplexMatrix& x) const;
    /// ||P^perp X P||_2 given XQ (ambient x rank).
    double off_block_hs(const ComplexMatrix& xq) const;
};

/// Window cells Delta_k = ((2k - n - 2) a / n, (2k - n) a / n], k = 1..n.
/// Returns the 1-based cell of x, or 0 when x lies outside (-a, a].
int window_cell(double x, double a, int n);

/// Span of F_k f_l / ||F_k f_l|| over cells k and columns f_l of `vectors`,
/// orthonormalized by modified Gram-Schmidt with drop tolerance 1e-12.
/// Throws BadWindow if ||(I - F((-a, a])) f_l|| >= epsilon for some l
/// (epsilon <= 0 means the constructive L a / sqrt(n)).
ProjectionBasis build_projection(const HermitianDecomposition& h0, const ComplexMatrix& vectors, double a, int n,
                                 double epsilon = 0.0);
ProjectionBasis build_projection(const ComplexMatrix& h0, const ComplexMatrix& vectors, double a, int n,
                                 double epsilon = 0.0);

/// A test space: H0 diagonal with spectrum equidistributed in (-a, a),
/// U0 its inverse Cayley transform, A = sum_l tau_l f_l f_l^* plus an
/// optional Hermitian tail orthogonal to the f_l.
struct WvnSetup {
    Eigen::Index ambient = 256;
    int L = 2;
    double window = 1.0;
    double phi = 0.3;
    std::vector<double> tau;  // empty: drawn from +-[0.3, 1]
    double tail_hs = 0.0;     // ||A - A_L||_2
    std::uint64_t seed = 1;
    bool with_perturbation = true;  // false: only H0, U0 and the f_l
};

struct WvnInstance {
    double window = 1.0;
    double phi = 0.0;
    ComplexMatrix h0;
    HermitianDecomposition h0dec;
    ComplexMatrix u0;
    ComplexMatrix f;  // ambient x L, orthonormal
    std::vector<double> tau;
    ComplexMatrix a;
    HermitianDecomposition adec;
    ComplexMatrix u;
    double tail_hs = 0.0;

    Eigen::Index ambient() const { return h0.rows(); }
    int L() const { return static_cast<int>(tau.size()); }
};

WvnInstance make_wvn_instance(const WvnSetup& setup);

struct BoundCheck {
    std::string name;
    double value = 0.0;
    double bound = 0.0;
    bool holds = false;
};

struct AuditReport {
    std::vector<BoundCheck> checks;

    bool all_hold() const;
    std::vector<BoundCheck> violations() const;
    /// Largest value / bound over checks with a positive bound.
    double worst_ratio() const;
    void add(std::string name, double value, double bound);
};

inline constexpr double kAuditSlack = 1e-10;

/// ||P^perp (i + sign H0)^{-1} P||_2, sign = +1 or -1.
double resolvent_compression(const ProjectionBasis& p, const HermitianDecomposition& h0, int sign);

/// ||P^perp f_l||, ||P^perp H0 P||_2, ||P^perp (i +- H0)^{-1} P||_2 against
/// eps = L a / sqrt(n), and ||P^perp U0^m P||_2 against 2|m| eps.
AuditReport audit_projection_estimates(const ProjectionBasis& p, const WvnInstance& inst,
                                       const std::vector<int>& m_list);

/// eps' = L a / sqrt(n) was used for P; the perturbation estimates are stated
/// for eps with eps' = min(eps, eps / sum|tau|), i.e. eps = max(1, sum|tau|) eps'.
double perturbation_epsilon(const ProjectionBasis& p, const std::vector<double>& tau);

/// ||A - A_L||_2 < eps, ||P^perp A||_2 < 2 eps, ||P^perp e^{itA} P||_2 over
/// t_samples against 2T e^{T||A||} eps, ||P^perp U^m P||_2 against
/// 2|m|(e^{||A||} + 1) eps.
AuditReport audit_perturbation_estimates(const ProjectionBasis& p, const WvnInstance& inst, double T,
                                         const std::vector<int>& m_list, const std::vector<double>& t_samples);

/// The six estimates relating (U0, A, U) to the compressed model, with the
/// compressed operators re-embedded through P's columns.
AuditReport audit_compression_estimates(const ProjectionBasis& p, const WvnInstance& inst, double T,
                                        const std::vector<int>& m_list, const std::vector<int>& k_list,
                                        const std::vector<double>& s_samples);

struct CompressedModel {
    ComplexMatrix u0p;  // rank x rank
    ComplexMatrix ap;
    ComplexMatrix up;
    double phase = 0.0;
    HermitianDecomposition ap_dec;
};

CompressedModel compressed_model(const ProjectionBasis& p, const ComplexMatrix& h0, const ComplexMatrix& a,
                                 double phi);

struct ConvergenceRow {
    int n = 0;
    Eigen::Index rank = 0;
    Complex compressed_trace;
    Complex full_trace;
    double abs_diff = 0.0;
};

/// Tr{p(U) - p(U0) - D} on the compressed model of P.
Complex compressed_trace(const ProjectionBasis& p, const WvnInstance& inst, const TrigPolynomial& poly);

/// One row per cell count n (ascending), P_n built from the rank-L vectors.
std::vector<ConvergenceRow> convergence_study(const WvnInstance& inst, const TrigPolynomial& poly,
                                              const std::vector<int>& cell_counts);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Symmetric t-grid of `points` samples over [-T, T].
std::vector<double> symmetric_grid(double T, int points);

}  // namespace ssf
