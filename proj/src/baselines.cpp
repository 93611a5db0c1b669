#include "qh/baselines.hpp"

#include <cmath>
#include <string>

#include "qh/numerics.hpp"

namespace qh::baselines {

void QREParams::validate() const {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw InvalidParams("lambda must be finite and >= 0");
    }
    if (max_iters < 1) throw InvalidParams("max_iters must be >= 1");
    if (!(fp_tol > 0.0)) throw InvalidParams("fp_tol must be > 0");
    if (!(damping > 0.0 && damping <= 1.0)) throw InvalidParams("damping must be in (0, 1]");
}

void CHParams::validate() const {
    if (!(tau >= 0.0) || !std::isfinite(tau)) throw InvalidParams("tau must be finite and >= 0");
    if (level_cap < 0) throw InvalidParams("level_cap must be >= 0");
}

FixedPointResult logit_qre_fixed_point(
    const std::function<std::vector<double>(const std::vector<double>&)>& payoffs,
    std::size_t n_actions, const QREParams& params) {
    params.validate();
    FixedPointResult res;
    std::vector<double> p(n_actions, 1.0 / static_cast<double>(n_actions));
    double damping = params.damping;
    double prev_residual = std::numeric_limits<double>::infinity();
    for (int it = 0; it < params.max_iters; ++it) {
        const std::vector<double> u = payoffs(p);
        if (u.size() != n_actions) throw LengthMismatch("payoff function arity mismatch");
        std::vector<double> log_w(n_actions);
        for (std::size_t a = 0; a < n_actions; ++a) log_w[a] = params.lambda * u[a];
        const std::vector<double> response = num::softmax_log_weights(log_w);
        double residual = 0.0;
        for (std::size_t a = 0; a < n_actions; ++a) {
            residual = std::max(residual, std::abs(response[a] - p[a]));
        }
        res.iterations = it + 1;
        if (residual < params.fp_tol) {
            res.strategy = response;
            res.converged = true;
            return res;
        }
        // saturated logit maps oscillate; shrink the step when the residual grows
        if (residual > prev_residual && damping > 1e-6) damping *= 0.5;
        prev_residual = residual;
        for (std::size_t a = 0; a < n_actions; ++a) {
            p[a] = (1.0 - damping) * p[a] + damping * response[a];
        }
    }
    res.strategy = p;
    res.converged = false;
    return res;
}

namespace {

// Expectation backup of per-player values for a fixed policy, reusing the
// shared utility definition so rule nodes are handled uniformly.
std::vector<std::vector<double>> backup_values(const tree::GameTree& tree,
                                               const tree::Policy& policy) {
    const int players = tree.players();
    std::vector<std::vector<double>> values(tree.node_count(),
                                            std::vector<double>(players, 0.0));
    for (std::size_t i = tree.node_count(); i-- > 0;) {
        const tree::Node& n = tree.node(i);
        std::vector<double>& v = values[i];
        for (std::size_t a = 0; a < n.children.size(); ++a) {
            const double w = policy[i][a];
            if (const auto* t = std::get_if<tree::Terminal>(&n.children[a])) {
                for (int p = 0; p < players; ++p) v[p] += w * t->payoffs[p];
            } else {
                const auto c = std::get<tree::NodeId>(n.children[a]);
                for (int p = 0; p < players; ++p) v[p] += w * values[c][p];
            }
        }
        if (!std::holds_alternative<tree::ExpectedContinuation>(n.utility)) {
            v[n.player] = num::dot(policy[i], tree::node_utilities(tree, i, policy, values));
        }
    }
    return values;
}

std::vector<double> one_hot(std::size_t n, std::size_t index) {
    std::vector<double> v(n, 0.0);
    v[index] = 1.0;
    return v;
}

}  // namespace

tree::Policy agent_qre(const tree::GameTree& tree, const QREParams& params) {
    params.validate();
    const std::size_t n = tree.node_count();
    tree::Policy policy(n);
    std::vector<std::vector<double>> values(n, std::vector<double>(tree.players(), 0.0));
    for (std::size_t i = n; i-- > 0;) {
        const tree::Node& node = tree.node(i);
        const std::vector<double> u = tree::node_utilities(tree, i, policy, values);
        std::vector<double> log_w(u.size());
        for (std::size_t a = 0; a < u.size(); ++a) {
            log_w[a] = std::log(node.prior[a]) + params.lambda * u[a];
        }
        policy[i] = num::softmax_log_weights(log_w);
        std::vector<double>& v = values[i];
        for (std::size_t a = 0; a < node.children.size(); ++a) {
            const double w = policy[i][a];
            if (const auto* t = std::get_if<tree::Terminal>(&node.children[a])) {
                for (int p = 0; p < tree.players(); ++p) v[p] += w * t->payoffs[p];
            } else {
                const auto c = std::get<tree::NodeId>(node.children[a]);
                for (int p = 0; p < tree.players(); ++p) v[p] += w * values[c][p];
            }
        }
        if (!std::holds_alternative<tree::ExpectedContinuation>(node.utility)) {
            v[node.player] = num::dot(policy[i], u);
        }
    }
    return policy;
}

BackwardInductionResult backward_induction(const tree::GameTree& tree) {
    const std::size_t n = tree.node_count();
    BackwardInductionResult res;
    res.policy.assign(n, {});
    res.values.assign(n, std::vector<double>(tree.players(), 0.0));
    for (std::size_t i = n; i-- > 0;) {
        const tree::Node& node = tree.node(i);
        const std::vector<double> u = tree::node_utilities(tree, i, res.policy, res.values);
        std::size_t best = 0;
        bool tied = false;
        for (std::size_t a = 1; a < u.size(); ++a) {
            if (u[a] > u[best]) {
                best = a;
                tied = false;
            } else if (u[a] == u[best]) {
                tied = true;
            }
        }
        if (tied) res.tie_nodes.push_back(i);
        res.policy[i] = one_hot(u.size(), best);
        std::vector<double>& v = res.values[i];
        if (const auto* t = std::get_if<tree::Terminal>(&node.children[best])) {
            v = t->payoffs;
        } else {
            v = res.values[std::get<tree::NodeId>(node.children[best])];
        }
        if (!std::holds_alternative<tree::ExpectedContinuation>(node.utility)) {
            v[node.player] = u[best];
        }
    }
    return res;
}

tree::Policy best_response_policy(const tree::GameTree& tree, const tree::Policy& against) {
    tree::validate_policy(tree, against);
    const std::vector<std::vector<double>> values = backup_values(tree, against);
    tree::Policy out(tree.node_count());
    for (std::size_t i = 0; i < tree.node_count(); ++i) {
        const std::vector<double> u = tree::node_utilities(tree, i, against, values);
        out[i] = one_hot(u.size(), num::argmax_lowest_tie(u));
    }
    return out;
}

tree::Policy level_k_tree_policy(const tree::GameTree& tree, int k, const tree::Policy& level0) {
    if (k < 0) throw InvalidParams("k must be >= 0");
    tree::Policy policy;
    if (level0.empty()) {
        policy.resize(tree.node_count());
        for (std::size_t i = 0; i < tree.node_count(); ++i) policy[i] = tree.node(i).prior;
    } else {
        policy = level0;
    }
    for (int step = 0; step < k; ++step) {
        policy = best_response_policy(tree, policy);
    }
    return policy;
}

std::vector<double> truncated_poisson_weights(double tau, int level_cap) {
    std::vector<double> w(static_cast<std::size_t>(level_cap) + 1, 0.0);
    if (tau == 0.0) {
        w[0] = 1.0;
        return w;
    }
    // log pmf to stay finite for large tau
    double log_fact = 0.0;
    std::vector<double> log_w(w.size());
    for (int k = 0; k <= level_cap; ++k) {
        if (k > 0) log_fact += std::log(static_cast<double>(k));
        log_w[k] = k * std::log(tau) - tau - log_fact;
    }
    return num::softmax_log_weights(log_w);
}

tree::Policy mix_policies(std::span<const tree::Policy> policies,
                          std::span<const double> weights) {
    if (policies.empty() || policies.size() != weights.size()) {
        throw LengthMismatch("mix_policies: need one weight per policy");
    }
    tree::Policy out = policies[0];
    for (auto& row : out) {
        for (double& x : row) x = 0.0;
    }
    for (std::size_t i = 0; i < policies.size(); ++i) {
        for (std::size_t n = 0; n < out.size(); ++n) {
            for (std::size_t a = 0; a < out[n].size(); ++a) {
                out[n][a] += weights[i] * policies[i][n][a];
            }
        }
    }
    return out;
}

tree::Policy cognitive_hierarchy_tree_policy(const tree::GameTree& tree, const CHParams& params) {
    params.validate();
    const std::vector<double> weights = truncated_poisson_weights(params.tau, params.level_cap);
    std::vector<tree::Policy> levels;
    levels.reserve(weights.size());
    // level 0: priors
    tree::Policy uniform(tree.node_count());
    for (std::size_t i = 0; i < tree.node_count(); ++i) uniform[i] = tree.node(i).prior;
    levels.push_back(uniform);
    for (int k = 1; k < static_cast<int>(weights.size()); ++k) {
        // belief: renormalized Poisson mixture over levels 0..k-1
        std::vector<double> belief(weights.begin(), weights.begin() + k);
        double s = 0.0;
        for (double w : belief) s += w;
        for (double& w : belief) w /= s;
        const tree::Policy blended =
            mix_policies(std::span(levels.data(), static_cast<std::size_t>(k)), belief);
        levels.push_back(best_response_policy(tree, blended));
    }
    return mix_policies(levels, weights);
}

}  // namespace qh::baselines
