#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qh/models.hpp"
#include "qh/observations.hpp"

namespace qh::fit {

// Per-family parameter bounds. Continuous spaces are sampled inside the
// bounds; level-k is searched exhaustively over 0..100.
struct SearchSpace {
    double beta_max = 100.0;    // QH/QRE: [0, 100)
    double gamma_max = 1.0;     // QH: [0, gamma_max]; capped below 1 for
                                // unbounded-horizon games (chain must terminate)
    double tau_max = 10.0;      // CH: [0, 10)
    int k_max = 100;            // level-k: {0..100}
};

SearchSpace search_space_for(models::Family family, const games::Experiment& exp);

struct CVPlan {
    int repeats = 5;
    int folds = 2;  // fixed at 2: each half trains once and tests once
    std::uint64_t seed = 0;
    density::BandwidthRule rule = density::BandwidthRule::Scott;
};

struct FitResult {
    models::ModelSpec fitted;
    double train_mse = 0.0;
    double test_rmse = 0.0;
    int evaluations = 0;
    int repeat = 0;
    int fold = 0;
};

// Seeded adaptive search (coarse uniform phase, then shrinking perturbations
// around the incumbent) minimizing MSE between the model's experiment vector
// and `train_target`. Evaluates the model at most `budget` parameter points.
FitResult fit_model(models::Family family, const games::Experiment& exp,
                    const std::vector<double>& train_target, int budget,
                    std::uint64_t seed);

struct CVOutcome {
    std::vector<FitResult> fits;  // repeats * folds entries
    double aggregate_rmse = 0.0;  // mean test RMSE
    double rmse_std = 0.0;        // std of per-fold test RMSE
};

// 5x2 repeated cross-validation: per repeat, units are split into two halves
// (stratified per game cell for count games); each half trains once and tests
// once. Train and test targets are smoothed independently with the same rule.
CVOutcome cross_validate(models::Family family, const games::Experiment& exp,
                         const obs::ObservationSet& set, const CVPlan& plan,
                         int budget = 1000);

// The two halves of one repeat's split (exposed for tests).
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_units(
    const games::Experiment& exp, const obs::ObservationSet& set, std::uint64_t seed);

double mse(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace qh::fit
