#pragma once

#include <functional>
#include <span>
#include <vector>

#include "qh/game_tree.hpp"

namespace qh::baselines {

struct QREParams {
    double lambda = 1.0;  // logit precision, >= 0
    int max_iters = 20000;
    double fp_tol = 1e-10;
    double damping = 0.5;  // in (0, 1]

    void validate() const;
};

struct FixedPointResult {
    std::vector<double> strategy;
    bool converged = false;
    int iterations = 0;
};

// Damped fixed-point iteration from the uniform point for a symmetric logit
// equilibrium: p* = softmax(lambda * payoffs(p*)). Damping is halved when the
// residual grows; if max_iters is exhausted the last iterate is returned with
// converged == false.
FixedPointResult logit_qre_fixed_point(
    const std::function<std::vector<double>(const std::vector<double>&)>& payoffs,
    std::size_t n_actions, const QREParams& params);

// Agent-form QRE: leaf-to-root backup where every node plays logit-lambda
// against the continuation values induced by descendants' logit play.
tree::Policy agent_qre(const tree::GameTree& tree, const QREParams& params);

struct BackwardInductionResult {
    tree::Policy policy;                      // deterministic (one-hot rows)
    std::vector<std::vector<double>> values;  // per node, per player
    std::vector<tree::NodeId> tie_nodes;      // nodes where the argmax was tied
};

// Deterministic backup choosing, at each node, the acting player's best
// continuation. Ties go to the lowest action index and are recorded.
BackwardInductionResult backward_induction(const tree::GameTree& tree);

// One best-response iteration against `against`: at every node the acting
// player deterministically maximizes expected payoff assuming all deeper
// nodes play `against`. Ties to the lowest action index.
tree::Policy best_response_policy(const tree::GameTree& tree, const tree::Policy& against);

// k-fold best-response iteration from level0 (uniform when empty).
tree::Policy level_k_tree_policy(const tree::GameTree& tree, int k,
                                 const tree::Policy& level0 = {});

struct CHParams {
    double tau = 1.5;    // Poisson mean, >= 0
    int level_cap = 30;  // truncation of the Poisson support

    void validate() const;
};

// Poisson(tau) weights over levels 0..level_cap, renormalized to sum 1.
std::vector<double> truncated_poisson_weights(double tau, int level_cap);

// Poisson cognitive hierarchy on a tree: each level best responds to the
// renormalized Poisson mixture of all lower levels; the result is the
// Poisson-weighted mixture of the level policies.
tree::Policy cognitive_hierarchy_tree_policy(const tree::GameTree& tree, const CHParams& params);

// Mixes policies row-wise: sum_i weights[i] * policies[i].
tree::Policy mix_policies(std::span<const tree::Policy> policies,
                          std::span<const double> weights);

}  // namespace qh::baselines
