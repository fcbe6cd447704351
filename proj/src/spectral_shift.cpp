#include "ssf/spectral_shift.hpp"

#include "ssf/error.hpp"

#include <cmath>
#include <string>

namespace ssf {

namespace {

void check_rule(const QuadratureRule& rule) {
    if (rule.nodes.empty() || rule.nodes.size() != rule.weights.size()) {
        throw Error(ErrorCode::InvalidArgument, "quadrature rule is empty or malformed");
    }
    for (double s : rule.nodes) {
        if (!(s >= 0.0 && s <= 1.0)) throw Error(ErrorCode::InvalidArgument, "s-nodes must lie in [0, 1]");
    }
}

// Integral of |y| for y linear between y0 and y1 over width h.
double abs_linear_integral(double y0, double y1, double h) {
    if ((y0 >= 0.0 && y1 >= 0.0) || (y0 <= 0.0 && y1 <= 0.0)) return 0.5 * h * (std::abs(y0) + std::abs(y1));
    return 0.5 * h * (y0 * y0 + y1 * y1) / (std::abs(y0) + std::abs(y1));
}

}  // namespace

StepFunction weighted_measure_step(const SpectralDecomposition& dec, const ComplexMatrix& w,
                                   double* imag_residue) {
    if (w.rows() != dec.dim() || w.cols() != dec.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "weight and decomposition differ in dimension");
    }
    const double tol = 1e-10 * std::max(1.0, w.norm());
    if (!is_hermitian(w, tol)) throw Error(ErrorCode::NotHermitian, "measure weight is not Hermitian");

    const ComplexMatrix wv = w * dec.vectors;
    std::vector<std::pair<double, double>> jumps;
    jumps.reserve(dec.angles.size());
    double residue = 0.0;
    for (Eigen::Index k = 0; k < dec.dim(); ++k) {
        const Complex q = dec.vectors.col(k).dot(wv.col(k));
        residue = std::max(residue, std::abs(q.imag()));
        jumps.emplace_back(dec.angles[k], q.real());
    }
    if (imag_residue) *imag_residue = residue;
    return StepFunction::from_jumps(std::move(jumps));
}

StepFunction eta_step_at_s(const SpectralDecomposition& u0dec, const SpectralDecomposition& usdec,
                           const ComplexMatrix& a) {
    if (u0dec.dim() != usdec.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "decompositions differ in dimension");
    }
    return weighted_measure_step(u0dec, a) - weighted_measure_step(usdec, a);
}

Complex integrate_against(const StepFunction& step, int r) {
    if (r == 0) return 0.0;
    // (ir)^2 (e^{irb} - e^{ira}) / (ir) = ir (e^{irb} - e^{ira})
    const Complex ir = kI * static_cast<double>(r);
    Complex sum = 0.0;
    const auto& values = step.values();
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (values[k] == 0.0) continue;
        const auto [lo, hi] = step.cell(k);
        sum += values[k] * (std::exp(ir * hi) - std::exp(ir * lo));
    }
    return ir * sum;
}

Complex fourier_against(const StepFunction& step, int n) {
    const auto& values = step.values();
    Complex sum = 0.0;
    if (n == 0) {
        for (std::size_t k = 0; k < values.size(); ++k) {
            const auto [lo, hi] = step.cell(k);
            sum += values[k] * (hi - lo);
        }
        return sum;
    }
    const Complex in = kI * static_cast<double>(n);
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (values[k] == 0.0) continue;
        const auto [lo, hi] = step.cell(k);
        sum += values[k] * (std::exp(in * hi) - std::exp(in * lo));
    }
    return sum / in;
}

double l1_distance(const StepFunction& f, double c) {
    double s = 0.0;
    for (std::size_t k = 0; k < f.values().size(); ++k) {
        const auto [lo, hi] = f.cell(k);
        s += std::abs(f.values()[k] - c) * (hi - lo);
    }
    return s;
}

SpectralShift::SpectralShift(const ComplexMatrix& u0, const ComplexMatrix& a, QuadratureRule rule)
    : rule_(std::move(rule)) {
    check_rule(rule_);
    build(UnitaryPath(u0, a));
}

SpectralShift::SpectralShift(const UnitaryPath& path, QuadratureRule rule) : rule_(std::move(rule)) {
    check_rule(rule_);
    build(path);
}

void SpectralShift::build(const UnitaryPath& path) {
    const ComplexMatrix& a = path.generator();
    const SpectralDecomposition u0dec = unitary_eig(path.base());
    double residue = 0.0;
    const StepFunction base = weighted_measure_step(u0dec, a, &residue);
    imag_residue_ = residue;
    steps_.clear();
    steps_.reserve(rule_.size());
    for (double s : rule_.nodes) {
        const SpectralDecomposition usdec = unitary_eig(path.at(s));
        steps_.push_back(base - weighted_measure_step(usdec, a, &residue));
        imag_residue_ = std::max(imag_residue_, residue);
    }
}

double SpectralShift::value(double t) const {
    double s = 0.0;
    for (std::size_t m = 0; m < steps_.size(); ++m) s += rule_.weights[m] * steps_[m](t);
    return s;
}

StepFunction SpectralShift::eta_step() const {
    std::vector<std::pair<double, double>> jumps;
    for (std::size_t m = 0; m < steps_.size(); ++m) {
        const auto& st = steps_[m];
        const double w = rule_.weights[m];
        if (st.values().front() != 0.0) jumps.emplace_back(0.0, w * st.values().front());
        for (std::size_t k = 0; k < st.breakpoints().size(); ++k) {
            jumps.emplace_back(st.breakpoints()[k], w * (st.values()[k + 1] - st.values()[k]));
        }
    }
    return StepFunction::from_jumps(std::move(jumps));
}

double SpectralShift::mean() const {
    double s = 0.0;
    for (std::size_t m = 0; m < steps_.size(); ++m) s += rule_.weights[m] * steps_[m].integral();
    return s / kTwoPi;
}

Complex SpectralShift::second_derivative_integral(int r) const {
    if (r == 0) return 0.0;
    Complex s = 0.0;
    for (std::size_t m = 0; m < steps_.size(); ++m) s += rule_.weights[m] * integrate_against(steps_[m], r);
    return s;
}

Complex SpectralShift::integrate(const TrigPolynomial& p) const {
    Complex s = 0.0;
    for (const auto& [n, a] : p.coefficients()) s += a * second_derivative_integral(n);
    return s;
}

Complex SpectralShift::fourier(int n) const {
    if (n == 0) throw Error(ErrorCode::ZeroHarmonic, "Fourier coefficient of eta requested at n = 0");
    Complex s = 0.0;
    for (std::size_t m = 0; m < steps_.size(); ++m) s += rule_.weights[m] * fourier_against(steps_[m], n);
    return s;
}

EtaProfile SpectralShift::profile(int grid_size) const {
    if (grid_size < 2) throw Error(ErrorCode::InvalidArgument, "eta grid needs at least 2 points");
    EtaProfile out;
    out.s_rule = rule_;
    out.imag_residue = imag_residue_;
    out.mean = mean();
    const auto g = static_cast<std::size_t>(grid_size);
    out.grid.resize(g);
    out.eta.resize(g);
    out.eta0.resize(g);
    for (std::size_t j = 0; j < g; ++j) {
        const double t = j + 1 == g ? kTwoPi : kTwoPi * static_cast<double>(j) / static_cast<double>(g - 1);
        out.grid[j] = t;
        out.eta[j] = value(t);
        out.eta0[j] = out.eta[j] - out.mean;
    }
    for (std::size_t j = 0; j + 1 < g; ++j) {
        out.l1_eta0 += abs_linear_integral(out.eta0[j], out.eta0[j + 1], out.grid[j + 1] - out.grid[j]);
    }
    out.l1_eta0_exact = l1_distance(eta_step(), out.mean);
    return out;
}

EtaProfile eta_profile(const ComplexMatrix& u0, const ComplexMatrix& a, int grid_size,
                       const QuadratureRule& s_rule) {
    return SpectralShift(u0, a, s_rule).profile(grid_size);
}

Complex eta_fourier(const ComplexMatrix& u0, const ComplexMatrix& a, int n, const QuadratureRule& s_rule) {
    if (n == 0) throw Error(ErrorCode::ZeroHarmonic, "Fourier coefficient of eta requested at n = 0");
    return SpectralShift(u0, a, s_rule).fourier(n);
}

}  // namespace ssf
