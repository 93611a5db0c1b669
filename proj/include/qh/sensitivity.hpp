#pragma once

#include <cstdint>
#include <vector>

#include "qh/models.hpp"

namespace qh::sens {

struct SweepPoint {
    double epsilon;
    std::vector<double> prediction;
    double max_deviation;  // max |prediction - baseline| elementwise
};

struct SweepResult {
    std::vector<double> baseline;  // prediction at the reference epsilon
    double reference_epsilon;
    std::vector<SweepPoint> points;
    double max_deviation;  // over all sampled epsilons
};

// Samples `n_samples` termination thresholds uniformly in [lo, hi] (seeded)
// and recomputes the QH prediction at each. Only meaningful for games whose
// reasoning chain terminates via epsilon; finite-horizon games are rejected.
SweepResult epsilon_sweep(const games::Game& game, const models::QHSpec& model,
                          int n_samples, std::uint64_t seed, double lo = 1e-9,
                          double hi = 1e-7, double reference = 1e-8);

}  // namespace qh::sens
