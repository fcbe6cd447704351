#pragma once

// Right-continuous piecewise-constant functions on [0, 2pi].
// Intervals are [0, b_1), [b_1, b_2), ..., [b_m, 2pi]; values has m + 1 entries.

#include "ssf/error.hpp"
#include "ssf/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace ssf {

inline constexpr double kBreakpointMerge = 1e-10;

namespace detail {

// Single-linkage clusters of sorted positions; returns [first, last] per cluster.
inline std::vector<std::pair<double, double>> cluster_positions(const std::vector<double>& sorted) {
    std::vector<std::pair<double, double>> out;
    for (double x : sorted) {
        if (!out.empty() && x - out.back().second < kBreakpointMerge) {
            out.back().second = x;
        } else {
            out.emplace_back(x, x);
        }
    }
    return out;
}

}  // namespace detail

template <class T>
class BasicStepFunction {
public:
    BasicStepFunction() : values_{T{}} {}

    BasicStepFunction(std::vector<double> breakpoints, std::vector<T> values) {
        if (values.size() != breakpoints.size() + 1) {
            throw Error(ErrorCode::InvalidArgument, "step function needs one more value than breakpoints");
        }
        for (std::size_t k = 0; k < breakpoints.size(); ++k) {
            const double b = breakpoints[k];
            if (!(b >= 0.0 && b <= kTwoPi)) {
                throw Error(ErrorCode::InvalidArgument, "step function breakpoint outside [0, 2pi]");
            }
            if (k > 0 && b < breakpoints[k - 1]) {
                throw Error(ErrorCode::InvalidArgument, "step function breakpoints must ascend");
            }
        }
        // Merge near-coincident breakpoints; the merged cell keeps the value
        // reached after the last member.
        values_.push_back(values.front());
        double last = 0.0;
        for (std::size_t k = 0; k < breakpoints.size(); ++k) {
            if (!breaks_.empty() && breakpoints[k] - last < kBreakpointMerge) {
                values_.back() = values[k + 1];
            } else {
                breaks_.push_back(breakpoints[k]);
                values_.push_back(values[k + 1]);
            }
            last = breakpoints[k];
        }
    }

    /// Cumulative sum of jumps: f(t) = sum of weights at positions <= t.
    static BasicStepFunction from_jumps(std::vector<std::pair<double, T>> jumps) {
        std::stable_sort(jumps.begin(), jumps.end(),
                         [](const auto& x, const auto& y) { return x.first < y.first; });
        std::vector<double> breaks;
        std::vector<T> values{T{}};
        T running{};
        double last = 0.0;
        for (const auto& [pos, w] : jumps) {
            if (!(pos >= 0.0 && pos <= kTwoPi)) {
                throw Error(ErrorCode::InvalidArgument, "jump position outside [0, 2pi]");
            }
            running += w;
            if (!breaks.empty() && pos - last < kBreakpointMerge) {
                values.back() = running;
            } else {
                breaks.push_back(pos);
                values.push_back(running);
            }
            last = pos;
        }
        return BasicStepFunction(std::move(breaks), std::move(values));
    }

    const std::vector<double>& breakpoints() const { return breaks_; }
    const std::vector<T>& values() const { return values_; }

    T operator()(double t) const {
        const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
        return values_[static_cast<std::size_t>(it - breaks_.begin())];
    }

    /// Interval [lo, hi) of cell k.
    std::pair<double, double> cell(std::size_t k) const {
        const double lo = k == 0 ? 0.0 : breaks_[k - 1];
        const double hi = k < breaks_.size() ? breaks_[k] : kTwoPi;
        return {lo, hi};
    }

    T integral() const {
        T s{};
        for (std::size_t k = 0; k < values_.size(); ++k) {
            const auto [lo, hi] = cell(k);
            s += values_[k] * (hi - lo);
        }
        return s;
    }

    double total_variation() const {
        double s = 0.0;
        for (std::size_t k = 1; k < values_.size(); ++k) s += std::abs(values_[k] - values_[k - 1]);
        return s;
    }

    /// op(a(t), b(t)) on the merged breakpoint set.
    template <class Op>
    static BasicStepFunction combine(const BasicStepFunction& a, const BasicStepFunction& b, Op op) {
        std::vector<double> all;
        all.reserve(a.breaks_.size() + b.breaks_.size());
        std::merge(a.breaks_.begin(), a.breaks_.end(), b.breaks_.begin(), b.breaks_.end(),
                   std::back_inserter(all));
        const auto clusters = detail::cluster_positions(all);
        std::vector<double> breaks;
        std::vector<T> values;
        breaks.reserve(clusters.size());
        values.reserve(clusters.size() + 1);
        values.push_back(op(a.values_.front(), b.values_.front()));
        for (const auto& [first, last] : clusters) {
            breaks.push_back(first);
            values.push_back(op(a(last), b(last)));
        }
        BasicStepFunction out;
        out.breaks_ = std::move(breaks);
        out.values_ = std::move(values);
        return out;
    }

private:
    std::vector<double> breaks_;
    std::vector<T> values_;
};

using StepFunction = BasicStepFunction<double>;

inline StepFunction operator-(const StepFunction& a, const StepFunction& b) {
    return StepFunction::combine(a, b, [](double x, double y) { return x - y; });
}

inline StepFunction operator+(const StepFunction& a, const StepFunction& b) {
    return StepFunction::combine(a, b, [](double x, double y) { return x + y; });
}

}  // namespace ssf
