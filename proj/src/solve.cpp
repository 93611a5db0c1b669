#include "qh/solve.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "qh/numerics.hpp"

namespace qh::solve {

void QHParams::validate() const {
    if (!std::isfinite(beta)) throw InvalidParams("beta must be finite");
    if (beta < 0.0 && !allow_adversarial) {
        throw InvalidParams("beta < 0 requires the adversarial flag");
    }
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw InvalidParams("gamma must be in [0, 1]");
    if (!(epsilon >= 1e-12 && epsilon <= 1e-4)) {
        throw InvalidParams("epsilon must be in [1e-12, 1e-4]");
    }
}

std::vector<double> single_step_decision(std::span<const double> utilities,
                                         std::span<const double> prior, double beta) {
    if (utilities.size() != prior.size()) {
        throw LengthMismatch("single_step_decision: utilities and prior differ in length");
    }
    if (!num::all_finite(utilities)) {
        throw NonFiniteUtility("single_step_decision: non-finite utility");
    }
    if (!std::isfinite(beta)) throw InvalidParams("beta must be finite");
    num::validate_probability_vector(prior, 1e-12, "prior");
    std::vector<double> log_w(utilities.size());
    for (std::size_t a = 0; a < utilities.size(); ++a) {
        log_w[a] = std::log(prior[a]) + beta * utilities[a];
    }
    return num::softmax_log_weights(log_w);
}

namespace {

Solution run_backup(const tree::GameTree& tree,
                    const std::function<double(std::size_t)>& resource_at_depth,
                    double epsilon) {
    const std::size_t n = tree.node_count();
    const int players = tree.players();
    Solution sol;
    sol.policy.assign(n, {});
    sol.log_partition.assign(n, 0.0);
    sol.values.assign(n, std::vector<double>(players, 0.0));

    for (std::size_t i = n; i-- > 0;) {
        const tree::Node& node = tree.node(i);
        const double beta_k = resource_at_depth(tree.depth(i));
        const std::vector<double> u = tree::node_utilities(tree, i, sol.policy, sol.values);
        if (!num::all_finite(u)) {
            throw NonFiniteBackup("non-finite utility at node " + std::to_string(i));
        }

        if (std::abs(beta_k) < epsilon) {
            // resources exhausted: echo the prior exactly, Z = 1
            sol.policy[i] = node.prior;
            sol.log_partition[i] = 0.0;
        } else {
            std::vector<double> log_w(u.size());
            for (std::size_t a = 0; a < u.size(); ++a) {
                log_w[a] = std::log(node.prior[a]) + beta_k * u[a];
            }
            sol.log_partition[i] = num::log_sum_exp(log_w);
            if (!std::isfinite(sol.log_partition[i])) {
                throw NonFiniteBackup("partition overflow at node " + std::to_string(i));
            }
            sol.policy[i] = num::softmax_log_weights(log_w);
        }

        // expected value per player under this node's decision
        std::vector<double>& v = sol.values[i];
        for (std::size_t a = 0; a < node.children.size(); ++a) {
            const double w = sol.policy[i][a];
            if (const auto* t = std::get_if<tree::Terminal>(&node.children[a])) {
                for (int p = 0; p < players; ++p) v[p] += w * t->payoffs[p];
            } else {
                const auto c = std::get<tree::NodeId>(node.children[a]);
                for (int p = 0; p < players; ++p) v[p] += w * sol.values[c][p];
            }
        }
        if (!std::holds_alternative<tree::ExpectedContinuation>(node.utility)) {
            v[node.player] = num::dot(sol.policy[i], u);
        }
        if (!num::all_finite(v)) {
            throw NonFiniteBackup("non-finite value at node " + std::to_string(i));
        }
    }
    return sol;
}

}  // namespace

Solution solve_qh(const tree::GameTree& tree, const QHParams& params) {
    params.validate();
    const double beta = params.beta;
    const double gamma = params.gamma;
    return run_backup(
        tree, [beta, gamma](std::size_t d) { return beta * std::pow(gamma, static_cast<double>(d)); },
        params.epsilon);
}

Solution solve_with_resources(const tree::GameTree& tree,
                              std::span<const double> beta_by_depth, double epsilon) {
    return run_backup(
        tree,
        [&beta_by_depth](std::size_t d) {
            return d < beta_by_depth.size() ? beta_by_depth[d] : 0.0;
        },
        epsilon);
}

std::size_t effective_depth(const QHParams& params) {
    return effective_depth(params, std::nullopt);
}

std::size_t effective_depth(const QHParams& params, std::optional<std::size_t> depth_cap) {
    params.validate();
    const double b = std::abs(params.beta);
    if (b < params.epsilon) return 0;
    if (params.gamma == 0.0) return 1;
    if (params.gamma == 1.0) {
        if (depth_cap) return *depth_cap;
        throw UnboundedDepth("gamma = 1 with beta >= epsilon never terminates without a depth cap");
    }
    std::size_t k = 0;
    double r = b;
    while (r >= params.epsilon) {
        r *= params.gamma;
        ++k;
        if (depth_cap && k >= *depth_cap) return *depth_cap;
    }
    return k;
}

HeatmapResult heatmap_grid(const tree::GameTree& tree, std::span<const double> betas,
                           std::span<const double> gammas, double epsilon) {
    HeatmapResult out;
    out.betas.assign(betas.begin(), betas.end());
    out.gammas.assign(gammas.begin(), gammas.end());
    out.payoff.assign(betas.size(), std::vector<double>(gammas.size(), 0.0));
    for (std::size_t i = 0; i < betas.size(); ++i) {
        for (std::size_t j = 0; j < gammas.size(); ++j) {
            QHParams p;
            p.beta = betas[i];
            p.gamma = gammas[j];
            p.epsilon = epsilon;
            p.allow_adversarial = betas[i] < 0.0;
            Solution sol = solve_qh(tree, p);
            out.payoff[i][j] = sol.values[0][tree.node(0).player];
        }
    }
    return out;
}

}  // namespace qh::solve
