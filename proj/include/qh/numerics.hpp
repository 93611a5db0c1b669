#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "qh/errors.hpp"

namespace qh::num {

inline bool all_finite(std::span<const double> xs) {
    for (double x : xs) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

// log(sum_i exp(xs[i])) with max-subtraction. -inf entries contribute zero mass.
inline double log_sum_exp(std::span<const double> xs) {
    double mx = -std::numeric_limits<double>::infinity();
    for (double x : xs) mx = std::max(mx, x);
    if (!std::isfinite(mx)) return mx;  // all -inf (or a +inf snuck in)
    double s = 0.0;
    for (double x : xs) s += std::exp(x - mx);
    return mx + std::log(s);
}

// Normalized probabilities from unnormalized log weights.
inline std::vector<double> softmax_log_weights(std::span<const double> log_w) {
    double mx = -std::numeric_limits<double>::infinity();
    for (double w : log_w) mx = std::max(mx, w);
    std::vector<double> out(log_w.size(), 0.0);
    if (!std::isfinite(mx)) {
        throw NonFiniteBackup("softmax: all weights are -inf or a weight is non-finite");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < log_w.size(); ++i) {
        out[i] = std::exp(log_w[i] - mx);
        s += out[i];
    }
    for (double& p : out) p /= s;
    return out;
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double mean(std::span<const double> xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

// Sample standard deviation (n-1 denominator), the convention bandwidth rules use.
inline double sample_stddev(std::span<const double> xs) {
    if (xs.size() < 2) return 0.0;
    double m = mean(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

// Linear-interpolated quantile of a sorted copy, q in [0,1].
inline double quantile(std::vector<double> xs, double q) {
    if (xs.empty()) return 0.0;
    std::sort(xs.begin(), xs.end());
    double pos = q * static_cast<double>(xs.size() - 1);
    auto lo = static_cast<std::size_t>(pos);
    std::size_t hi = std::min(lo + 1, xs.size() - 1);
    double frac = pos - static_cast<double>(lo);
    return xs[lo] * (1.0 - frac) + xs[hi] * frac;
}

inline std::size_t argmax_lowest_tie(std::span<const double> xs) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (xs[i] > xs[best]) best = i;
    }
    return best;
}

inline void validate_probability_vector(std::span<const double> p, double tol,
                                        const char* what) {
    double s = 0.0;
    for (double x : p) {
        if (!(x >= 0.0)) throw InvalidPrior(std::string(what) + ": negative entry");
        s += x;
    }
    if (std::abs(s - 1.0) > tol) {
        throw InvalidPrior(std::string(what) + ": entries sum to " + std::to_string(s));
    }
}

}  // namespace qh::num
