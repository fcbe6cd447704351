#pragma once

// Closed-form eta for 1x1 pairs U0 = e^{i beta}, A = alpha, |alpha| < pi.
// eta(t) = alpha * |{s in [0,1] : theta_0 <= t}| - alpha * |{s : theta(s) <= t}|
// with theta(s) = beta + s alpha wrapped into (0, 2pi].

#include "ssf/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace oracle {

// Length of {s in [s0, s1] : c + s alpha <= t} for the linear piece c + s alpha.
inline double below_length(double c, double alpha, double s0, double s1, double t) {
    if (alpha == 0.0) return c <= t ? s1 - s0 : 0.0;
    const double cross = (t - c) / alpha;  // c + s alpha = t
    if (alpha > 0.0) return std::clamp(cross, s0, s1) - s0;
    return s1 - std::clamp(cross, s0, s1);
}

inline double scalar_eta(double alpha, double beta, double t) {
    const double theta0 = ssf::wrap_positive(beta);
    const double base = theta0 <= t ? 1.0 : 0.0;
    // split [0, 1] where theta(s) wraps
    double below = 0.0;
    const double start = theta0;
    double s_wrap = 2.0;
    if (alpha > 0.0) s_wrap = (ssf::kTwoPi - start) / alpha;
    if (alpha < 0.0) s_wrap = -start / alpha;  // theta hits 0, reappears at 2pi
    if (s_wrap >= 1.0) {
        below = below_length(start, alpha, 0.0, 1.0, t);
    } else {
        below = below_length(start, alpha, 0.0, s_wrap, t);
        const double shifted = alpha > 0.0 ? start - ssf::kTwoPi : start + ssf::kTwoPi;
        below += below_length(shifted, alpha, s_wrap, 1.0, t);
    }
    return alpha * (base - below);
}

}  // namespace oracle
