#include "ssf/reduction.hpp"

#include "ssf/error.hpp"
#include "ssf/trace_formula.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ssf {

namespace {

constexpr double kDropTolerance = 1e-12;

// U^m X by repeated multiplication (U^* for negative m).
ComplexMatrix apply_power(const ComplexMatrix& u, int m, const ComplexMatrix& x) {
    ComplexMatrix y = x;
    if (m >= 0) {
        for (int k = 0; k < m; ++k) y = u * y;
    } else {
        for (int k = 0; k < -m; ++k) y = u.adjoint() * y;
    }
    return y;
}

ComplexMatrix small_power(const ComplexMatrix& u, int m) {
    return apply_power(u, m, ComplexMatrix::Identity(u.rows(), u.cols()));
}

double op_from_decomposition(const HermitianDecomposition& dec) {
    if (dec.eigenvalues.empty()) return 0.0;
    return std::max(std::abs(dec.eigenvalues.front()), std::abs(dec.eigenvalues.back()));
}

ComplexMatrix rank_part(const WvnInstance& inst) {
    ComplexMatrix scaled = inst.f;
    for (int l = 0; l < inst.L(); ++l) scaled.col(l) *= inst.tau[static_cast<std::size_t>(l)];
    return scaled * inst.f.adjoint();
}

CompressedModel compress(const ProjectionBasis& p, const ComplexMatrix& h0q, const ComplexMatrix& aq, double phi) {
    const ComplexMatrix& q = p.columns;
    CompressedModel out;
    out.phase = phi;
    ComplexMatrix hc = q.adjoint() * h0q;
    hc = 0.5 * (hc + hc.adjoint());
    ComplexMatrix ac = q.adjoint() * aq;
    out.ap = 0.5 * (ac + ac.adjoint());
    out.u0p = cayley_inverse(hc, phi);
    out.ap_dec = herm_eig(out.ap);
    out.up = exp_i(out.ap_dec, 1.0) * out.u0p;
    return out;
}

CompressedModel compress(const ProjectionBasis& p, const WvnInstance& inst) {
    const ComplexMatrix h0q = inst.h0dec.apply_function([](double x) { return x; }, p.columns);
    return compress(p, h0q, inst.a * p.columns, inst.phi);
}

}  // namespace

ComplexMatrix cayley_forward(const ComplexMatrix& u0, double phi) {
    require_unitary(u0, "U0");
    const Eigen::Index d = u0.rows();
    const ComplexMatrix shifted = ComplexMatrix::Identity(d, d) + std::exp(-kI * phi) * u0;
    Eigen::BDCSVD<ComplexMatrix> svd(shifted);
    const double gap = svd.singularValues()(d - 1);
    if (gap < 1e-6) {
        throw Error(ErrorCode::PhaseTooClose, "-e^{i phi} is within 1e-6 of the spectrum of U0");
    }
    const ComplexMatrix h = cayley_transform(u0, phi);
    return 0.5 * (h + h.adjoint());
}

ComplexMatrix cayley_inverse(const ComplexMatrix& h0, double phi) {
    require_square(h0, "H0");
    return inverse_cayley_transform(h0, phi);
}

ProjectionBasis ProjectionBasis::identity(Eigen::Index dim) {
    ProjectionBasis p;
    p.ambient_dim = dim;
    p.columns = ComplexMatrix::Identity(dim, dim);
    return p;
}

double ProjectionBasis::complement_norm(const ComplexVector& v) const {
    return (v - columns * (columns.adjoint() * v)).norm();
}

double ProjectionBasis::complement_hs(const ComplexMatrix& x) const {
    return (x - columns * (columns.adjoint() * x)).norm();
}

double ProjectionBasis::off_block_hs(const ComplexMatrix& xq) const {
    return (xq - columns * (columns.adjoint() * xq)).norm();
}

int window_cell(double x, double a, int n) {
    if (!(x > -a && x <= a)) return 0;
    auto lo = [&](int k) { return (2.0 * k - n - 2.0) * a / n; };
    auto hi = [&](int k) { return (2.0 * k - n) * a / n; };
    int k = static_cast<int>(std::ceil((x + a) * n / (2.0 * a)));
    k = std::clamp(k, 1, n);
    while (k > 1 && x <= lo(k)) --k;
    while (k < n && x > hi(k)) ++k;
    return k;
}

ProjectionBasis build_projection(const HermitianDecomposition& h0, const ComplexMatrix& vectors, double a, int n,
                                 double epsilon) {
    const Eigen::Index dim = h0.dim();
    if (!(a > 0.0) || n < 1) throw Error(ErrorCode::InvalidArgument, "window needs a > 0 and n >= 1");
    if (vectors.rows() != dim || vectors.cols() < 1) {
        throw Error(ErrorCode::DimensionMismatch, "window vectors do not match H0");
    }
    for (Eigen::Index l = 0; l < vectors.cols(); ++l) {
        if (std::abs(vectors.col(l).norm() - 1.0) > 1e-10) {
            throw Error(ErrorCode::InvalidArgument, "window vectors must be normalized");
        }
    }
    const auto L = static_cast<int>(vectors.cols());

    ProjectionBasis out;
    out.ambient_dim = dim;
    out.params.L = L;
    out.params.a = a;
    out.params.n = n;
    out.params.epsilon = L * a / std::sqrt(static_cast<double>(n));
    const double target = epsilon > 0.0 ? epsilon : out.params.epsilon;

    // coordinates of f_l in the eigenbasis of H0
    const ComplexMatrix coords = h0.identity_basis ? vectors : ComplexMatrix(h0.vectors.adjoint() * vectors);

    std::vector<std::vector<Eigen::Index>> cells(static_cast<std::size_t>(n) + 1);
    for (Eigen::Index j = 0; j < dim; ++j) {
        cells[static_cast<std::size_t>(window_cell(h0.eigenvalues[j], a, n))].push_back(j);
    }
    for (int l = 0; l < L; ++l) {
        double outside = 0.0;
        for (Eigen::Index j : cells[0]) outside += std::norm(coords(j, l));
        if (std::sqrt(outside) >= target) {
            throw Error(ErrorCode::BadWindow, "vector " + std::to_string(l) +
                                                  " has too much spectral mass outside the window");
        }
    }

    std::vector<ComplexVector> accepted;
    for (int k = 1; k <= n; ++k) {
        const auto& idx = cells[static_cast<std::size_t>(k)];
        if (idx.empty()) continue;
        // Distinct cells are spectrally orthogonal, so Gram-Schmidt only
        // runs inside a cell.
        const std::size_t cell_start = accepted.size();
        for (int l = 0; l < L; ++l) {
            ComplexVector local(static_cast<Eigen::Index>(idx.size()));
            for (std::size_t i = 0; i < idx.size(); ++i) local(static_cast<Eigen::Index>(i)) = coords(idx[i], l);
            const double mass = local.norm();
            if (mass <= kDropTolerance) continue;

            ComplexVector g = ComplexVector::Zero(dim);
            if (h0.identity_basis) {
                for (std::size_t i = 0; i < idx.size(); ++i) g(idx[i]) = local(static_cast<Eigen::Index>(i));
            } else {
                for (std::size_t i = 0; i < idx.size(); ++i) {
                    g += h0.vectors.col(idx[i]) * local(static_cast<Eigen::Index>(i));
                }
            }
            g /= mass;
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t c = cell_start; c < accepted.size(); ++c) {
                    g -= accepted[c].dot(g) * accepted[c];
                }
            }
            const double rest = g.norm();
            if (rest < kDropTolerance) continue;
            accepted.push_back(g / rest);
        }
    }

    out.columns.resize(dim, static_cast<Eigen::Index>(accepted.size()));
    for (std::size_t c = 0; c < accepted.size(); ++c) out.columns.col(static_cast<Eigen::Index>(c)) = accepted[c];
    return out;
}

ProjectionBasis build_projection(const ComplexMatrix& h0, const ComplexMatrix& vectors, double a, int n,
                                 double epsilon) {
    return build_projection(herm_eig(h0), vectors, a, n, epsilon);
}

WvnInstance make_wvn_instance(const WvnSetup& setup) {
    const Eigen::Index N = setup.ambient;
    if (N < 1 || setup.L < 1 || setup.L > N || !(setup.window > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "bad reduction setup");
    }
    if (!setup.tau.empty() && static_cast<int>(setup.tau.size()) != setup.L) {
        throw Error(ErrorCode::InvalidArgument, "tau must have L entries");
    }
    Rng rng(setup.seed);
    WvnInstance inst;
    inst.window = setup.window;
    inst.phi = setup.phi;

    // Cell midpoints never fall on a cell edge when n divides N.
    inst.h0dec.eigenvalues.resize(static_cast<std::size_t>(N));
    for (Eigen::Index j = 0; j < N; ++j) {
        inst.h0dec.eigenvalues[j] = -setup.window + (2.0 * j + 1.0) * setup.window / static_cast<double>(N);
    }
    inst.h0dec.vectors = ComplexMatrix::Identity(N, N);
    inst.h0dec.identity_basis = true;
    inst.h0 = inst.h0dec.reconstruct();
    const double phi = setup.phi;
    inst.u0 = inst.h0dec.function([phi](double x) { return std::exp(kI * phi) * (kI - x) / (kI + x); });

    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix z(N, setup.L);
    for (Eigen::Index c = 0; c < z.cols(); ++c) {
        for (Eigen::Index r = 0; r < N; ++r) {
            const double re = normal(rng);
            const double im = normal(rng);
            z(r, c) = Complex(re, im);
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    // The full Q (for the complement of the f_l) is only needed to build A.
    const ComplexMatrix full_q = setup.with_perturbation ? ComplexMatrix(qr.householderQ()) : ComplexMatrix();
    inst.f = setup.with_perturbation ? ComplexMatrix(full_q.leftCols(setup.L))
                                     : ComplexMatrix(qr.householderQ() * ComplexMatrix::Identity(N, setup.L));

    if (setup.tau.empty()) {
        std::uniform_real_distribution<double> mag(0.3, 1.0);
        std::bernoulli_distribution sign(0.5);
        for (int l = 0; l < setup.L; ++l) {
            const double m = mag(rng);
            inst.tau.push_back(sign(rng) ? m : -m);
        }
    } else {
        inst.tau = setup.tau;
    }

    if (!setup.with_perturbation) return inst;

    if (setup.tail_hs > 0.0) {
        const ComplexMatrix complement = full_q.rightCols(N - setup.L);
        const ComplexMatrix r = random_hermitian(rng, N - setup.L);
        ComplexMatrix tail = complement * r * complement.adjoint();
        tail = 0.5 * (tail + tail.adjoint());
        tail *= setup.tail_hs / tail.norm();
        inst.a = rank_part(inst) + tail;
        inst.adec = herm_eig(inst.a);
        inst.tail_hs = setup.tail_hs;
    } else {
        // exact decomposition: tau_l on f_l, zero on the complement
        std::vector<std::pair<double, Eigen::Index>> order;
        for (Eigen::Index c = 0; c < N; ++c) {
            order.emplace_back(c < setup.L ? inst.tau[static_cast<std::size_t>(c)] : 0.0, c);
        }
        std::stable_sort(order.begin(), order.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        inst.adec.vectors.resize(N, N);
        for (Eigen::Index c = 0; c < N; ++c) {
            inst.adec.eigenvalues.push_back(order[static_cast<std::size_t>(c)].first);
            inst.adec.vectors.col(c) = full_q.col(order[static_cast<std::size_t>(c)].second);
        }
        inst.a = rank_part(inst);
        inst.tail_hs = 0.0;
    }
    inst.a = 0.5 * (inst.a + inst.a.adjoint());
    inst.u = exp_i(inst.adec, 1.0) * inst.u0;
    return inst;
}

bool AuditReport::all_hold() const {
    return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.holds; });
}

std::vector<BoundCheck> AuditReport::violations() const {
    std::vector<BoundCheck> out;
    for (const auto& c : checks) {
        if (!c.holds) out.push_back(c);
    }
    return out;
}

double AuditReport::worst_ratio() const {
    double w = 0.0;
    for (const auto& c : checks) {
        if (c.bound > 0.0) w = std::max(w, c.value / c.bound);
    }
    return w;
}

void AuditReport::add(std::string name, double value, double bound) {
    checks.push_back({std::move(name), value, bound, value <= bound + kAuditSlack});
}

double resolvent_compression(const ProjectionBasis& p, const HermitianDecomposition& h0, int sign) {
    const double sg = sign >= 0 ? 1.0 : -1.0;
    const ComplexMatrix xq = h0.apply_function([sg](double x) { return 1.0 / (kI + sg * x); }, p.columns);
    return p.off_block_hs(xq);
}

AuditReport audit_projection_estimates(const ProjectionBasis& p, const WvnInstance& inst,
                                       const std::vector<int>& m_list) {
    AuditReport rep;
    const double eps = p.params.epsilon;
    for (Eigen::Index l = 0; l < inst.f.cols(); ++l) {
        rep.add("complement_f" + std::to_string(l), p.complement_norm(inst.f.col(l)), eps);
    }
    const ComplexMatrix h0q = inst.h0dec.apply_function([](double x) { return x; }, p.columns);
    rep.add("off_block_H0", p.off_block_hs(h0q), eps);
    rep.add("off_block_resolvent_plus", resolvent_compression(p, inst.h0dec, +1), eps);
    rep.add("off_block_resolvent_minus", resolvent_compression(p, inst.h0dec, -1), eps);
    for (int m : m_list) {
        const ComplexMatrix xq = apply_power(inst.u0, m, p.columns);
        rep.add("off_block_U0^" + std::to_string(m), p.off_block_hs(xq), 2.0 * std::abs(m) * eps);
    }
    return rep;
}

double perturbation_epsilon(const ProjectionBasis& p, const std::vector<double>& tau) {
    double total = 0.0;
    for (double t : tau) total += std::abs(t);
    return std::max(1.0, total) * p.params.epsilon;
}

AuditReport audit_perturbation_estimates(const ProjectionBasis& p, const WvnInstance& inst, double T,
                                         const std::vector<int>& m_list, const std::vector<double>& t_samples) {
    AuditReport rep;
    const double eps = perturbation_epsilon(p, inst.tau);
    const double a_op = op_from_decomposition(inst.adec);

    rep.add("truncation", (inst.a - rank_part(inst)).norm(), eps);
    rep.add("complement_A", p.complement_hs(inst.a), 2.0 * eps);
    for (double t : t_samples) {
        if (std::abs(t) > T) throw Error(ErrorCode::InvalidArgument, "t sample outside [-T, T]");
        const ComplexMatrix xq = inst.adec.apply_function([t](double x) { return std::exp(kI * (t * x)); }, p.columns);
        rep.add("off_block_exp(" + std::to_string(t) + "A)", p.off_block_hs(xq),
                2.0 * T * std::exp(T * a_op) * eps);
    }
    for (int m : m_list) {
        const ComplexMatrix xq = apply_power(inst.u, m, p.columns);
        rep.add("off_block_U^" + std::to_string(m), p.off_block_hs(xq),
                2.0 * std::abs(m) * (std::exp(a_op) + 1.0) * eps);
    }
    return rep;
}

AuditReport audit_compression_estimates(const ProjectionBasis& p, const WvnInstance& inst, double T,
                                        const std::vector<int>& m_list, const std::vector<int>& k_list,
                                        const std::vector<double>& s_samples) {
    AuditReport rep;
    const double eps = perturbation_epsilon(p, inst.tau);
    const double a_op = op_from_decomposition(inst.adec);
    const double a_hs = inst.a.norm();
    const ComplexMatrix& q = p.columns;
    const CompressedModel model = compress(p, inst);
    const Eigen::Index N = inst.ambient();
    const ComplexMatrix eye = ComplexMatrix::Identity(N, N);
    const ComplexMatrix exp_a = exp_i(inst.adec, 1.0);

    rep.add("complement_expA_minus_I", p.complement_hs(exp_a - eye), 2.0 * eps);
    for (double s : s_samples) {
        if (std::abs(s) > T) throw Error(ErrorCode::InvalidArgument, "s sample outside [-T, T]");
        const ComplexMatrix lhs = inst.adec.apply_function([s](double x) { return std::exp(kI * (s * x)); }, q) -
                                  q * exp_i(model.ap_dec, s);
        rep.add("exp(" + std::to_string(s) + "A)_vs_compressed", lhs.norm(), 2.0 * T * eps);
    }
    {
        const ComplexMatrix rem = exp_a - kI * inst.a - eye;
        const double value = trace_norm(rem - q * (q.adjoint() * rem));
        const double bound = a_op > 0.0 ? 2.0 * a_hs * exp_remainder_ratio(a_op) * eps : 0.0;
        rep.add("complement_expA_remainder_trace", value, bound);
    }
    for (int m : m_list) {
        const double am = std::abs(m);
        const ComplexMatrix d0 = apply_power(inst.u0, m, q) - q * small_power(model.u0p, m);
        rep.add("U0^" + std::to_string(m) + "_vs_compressed", d0.norm(), 2.0 * am * eps);
        const ComplexMatrix d1 = q.adjoint() * apply_power(inst.u, m, q) - small_power(model.up, m);
        rep.add("U^" + std::to_string(m) + "_vs_compressed", d1.norm(),
                2.0 * am * eps * ((am - 1.0) * std::exp(a_op) + am + 1.0));
    }
    const ComplexMatrix exp_ac = exp_i(model.ap_dec, 1.0);
    for (int k : k_list) {
        const ComplexMatrix w = apply_power(inst.u0, k, q);  // U0^k Q
        const ComplexMatrix inner = q.adjoint() * (exp_a * w) - exp_ac * (q.adjoint() * w);
        for (int m : m_list) {
            const Complex tr = (small_power(model.up, m) * inner).trace();
            rep.add("mixed_trace_m" + std::to_string(m) + "_k" + std::to_string(k), std::abs(tr),
                    4.0 * eps * eps * std::exp(a_op));
        }
    }
    return rep;
}

CompressedModel compressed_model(const ProjectionBasis& p, const ComplexMatrix& h0, const ComplexMatrix& a,
                                 double phi) {
    require_square(h0, "H0");
    require_square(a, "A");
    if (h0.rows() != p.ambient_dim || a.rows() != p.ambient_dim) {
        throw Error(ErrorCode::DimensionMismatch, "projection and operators differ in dimension");
    }
    return compress(p, h0 * p.columns, a * p.columns, phi);
}

Complex compressed_trace(const ProjectionBasis& p, const WvnInstance& inst, const TrigPolynomial& poly) {
    const CompressedModel model = compress(p, inst);
    return lhs_trace(model.u0p, model.up, model.ap, poly);
}

std::vector<ConvergenceRow> convergence_study(const WvnInstance& inst, const TrigPolynomial& poly,
                                              const std::vector<int>& cell_counts) {
    if (!std::is_sorted(cell_counts.begin(), cell_counts.end())) {
        throw Error(ErrorCode::InvalidArgument, "cell counts must ascend");
    }
    const Complex full = lhs_trace(inst.u0, inst.u, inst.a, poly);
    std::vector<ConvergenceRow> rows;
    for (int n : cell_counts) {
        const ProjectionBasis p = build_projection(inst.h0dec, inst.f, inst.window, n);
        ConvergenceRow row;
        row.n = n;
        row.rank = p.rank();
        row.full_trace = full;
        row.compressed_trace = compressed_trace(p, inst, poly);
        row.abs_diff = std::abs(row.compressed_trace - full);
        rows.push_back(row);
    }
    return rows;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw Error(ErrorCode::InvalidArgument, "slope fit needs >= 2 points");
    double mx = 0.0;
    double my = 0.0;
    const double k = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0 && y[i] > 0.0)) throw Error(ErrorCode::InvalidArgument, "slope fit needs positive data");
        mx += std::log(x[i]) / k;
        my += std::log(y[i]) / k;
    }
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

std::vector<double> symmetric_grid(double T, int points) {
    if (points < 2) throw Error(ErrorCode::InvalidArgument, "grid needs at least 2 points");
    std::vector<double> out;
    for (int j = 0; j < points; ++j) out.push_back(-T + 2.0 * T * j / (points - 1));
    return out;
}

}  // namespace ssf
