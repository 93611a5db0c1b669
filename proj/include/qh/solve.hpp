#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qh/game_tree.hpp"

namespace qh::solve {

struct QHParams {
    double beta = 1.0;    // resource parameter, >= 0 unless allow_adversarial
    double gamma = 1.0;   // discount on resources per reasoning depth, in [0,1]
    double epsilon = 1e-8;  // termination threshold on beta*gamma^k
    bool allow_adversarial = false;

    void validate() const;  // throws InvalidParams
};

struct Solution {
    tree::Policy policy;
    std::vector<double> log_partition;        // log Z per node (0 at echo nodes)
    std::vector<std::vector<double>> values;  // per node, per player
};

// Single-step decision: f[a] proportional to prior[a] * exp(beta * U[a]),
// computed in log-domain.
std::vector<double> single_step_decision(std::span<const double> utilities,
                                         std::span<const double> prior, double beta);

// Backs the discounted-resource decision rule up the tree. A node at depth k
// from the root decides with resource beta*gamma^k; once that falls below
// epsilon the node echoes its prior exactly.
Solution solve_qh(const tree::GameTree& tree, const QHParams& params);

// Same backup with an explicit per-depth resource schedule (depths beyond the
// schedule get resource 0). Used by tests and the level-limit checks.
Solution solve_with_resources(const tree::GameTree& tree,
                              std::span<const double> beta_by_depth, double epsilon);

// Smallest k with |beta|*gamma^k < epsilon; the number of reasoning levels
// that do any processing. Unbounded for gamma == 1 with beta >= epsilon.
std::size_t effective_depth(const QHParams& params);
std::size_t effective_depth(const QHParams& params, std::optional<std::size_t> depth_cap);

struct HeatmapResult {
    std::vector<double> betas;
    std::vector<double> gammas;
    // payoff[i][j] = root player's expected payoff at (betas[i], gammas[j])
    std::vector<std::vector<double>> payoff;
};

HeatmapResult heatmap_grid(const tree::GameTree& tree, std::span<const double> betas,
                           std::span<const double> gammas, double epsilon = 1e-8);

}  // namespace qh::solve
