#include "qh/game_tree.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <string>

#include "qh/numerics.hpp"

namespace qh::tree {

namespace {

void validate_desc(const NodeDesc& d, int players) {
    if (d.actions.empty()) {
        throw EmptyActions("node " + std::to_string(d.id) + " has no actions");
    }
    if (d.children.size() != d.actions.size()) {
        throw LengthMismatch("node " + std::to_string(d.id) + ": " +
                             std::to_string(d.children.size()) + " children for " +
                             std::to_string(d.actions.size()) + " actions");
    }
    if (d.player < 0 || d.player >= players) {
        throw DataError("node " + std::to_string(d.id) + ": acting player " +
                        std::to_string(d.player) + " out of range");
    }
    for (const Child& c : d.children) {
        if (const auto* t = std::get_if<Terminal>(&c)) {
            if (static_cast<int>(t->payoffs.size()) != players) {
                throw PayoffArityMismatch("node " + std::to_string(d.id) + ": terminal with " +
                                          std::to_string(t->payoffs.size()) +
                                          " payoffs, expected " + std::to_string(players));
            }
            for (double v : t->payoffs) {
                if (!std::isfinite(v)) {
                    throw DataError("node " + std::to_string(d.id) + ": non-finite payoff");
                }
            }
        }
    }
    if (d.prior) {
        if (d.prior->size() != d.actions.size()) {
            throw LengthMismatch("node " + std::to_string(d.id) + ": prior length mismatch");
        }
        num::validate_probability_vector(*d.prior, 1e-12,
                                         ("node " + std::to_string(d.id) + " prior").c_str());
    }
    if (const auto* tab = std::get_if<UtilityTable>(&d.utility)) {
        if (tab->values.size() != d.actions.size()) {
            throw LengthMismatch("node " + std::to_string(d.id) + ": utility table length mismatch");
        }
    }
    if (const auto* gt = std::get_if<GuessTargetUtility>(&d.utility)) {
        if (gt->action_values.size() != d.actions.size()) {
            throw LengthMismatch("node " + std::to_string(d.id) + ": action values length mismatch");
        }
    }
    if (const auto* mk = std::get_if<MarketEntryUtility>(&d.utility)) {
        if (mk->enter_index >= d.actions.size()) {
            throw DataError("node " + std::to_string(d.id) + ": enter index out of range");
        }
    }
}

}  // namespace

GameTree GameTree::build(const std::vector<NodeDesc>& descs, int players,
                         std::optional<std::size_t> depth_cap) {
    if (players < 1) throw DataError("player count must be >= 1");
    if (descs.empty()) throw DataError("empty tree description");

    std::map<std::size_t, std::size_t> index_of;  // input id -> desc index
    for (std::size_t i = 0; i < descs.size(); ++i) {
        if (!index_of.emplace(descs[i].id, i).second) {
            throw DataError("duplicate node id " + std::to_string(descs[i].id));
        }
        validate_desc(descs[i], players);
    }

    // Every internal child must exist and be referenced by exactly one parent
    // node (a parent may reach the same child through several actions).
    std::map<std::size_t, std::size_t> parent_of;  // child input id -> parent input id
    for (const NodeDesc& d : descs) {
        for (const Child& c : d.children) {
            if (const auto* id = std::get_if<NodeId>(&c)) {
                if (!index_of.count(*id)) {
                    throw DanglingChild("node " + std::to_string(d.id) +
                                        " references unknown child " + std::to_string(*id));
                }
                auto [it, inserted] = parent_of.emplace(*id, d.id);
                if (!inserted && it->second != d.id) {
                    throw CycleDetected("node " + std::to_string(*id) +
                                        " reachable from multiple parents");
                }
                if (*id == d.id) {
                    throw CycleDetected("node " + std::to_string(d.id) + " references itself");
                }
            }
        }
    }

    std::vector<std::size_t> roots;
    for (const NodeDesc& d : descs) {
        if (!parent_of.count(d.id)) roots.push_back(d.id);
    }
    if (roots.empty()) {
        throw CycleDetected("no root: every node is referenced as a child");
    }
    if (roots.size() > 1) {
        throw DataError("multiple roots: descriptions do not form a single tree");
    }

    // Breadth-first index assignment from the root.
    std::map<std::size_t, NodeId> new_id;
    std::deque<std::size_t> queue{roots[0]};
    std::vector<std::size_t> order;  // input ids in BFS order
    new_id[roots[0]] = 0;
    while (!queue.empty()) {
        std::size_t id = queue.front();
        queue.pop_front();
        order.push_back(id);
        const NodeDesc& d = descs[index_of[id]];
        for (const Child& c : d.children) {
            if (const auto* cid = std::get_if<NodeId>(&c)) {
                if (!new_id.count(*cid)) {
                    new_id[*cid] = new_id.size();
                    queue.push_back(*cid);
                }
            }
        }
    }
    if (order.size() != descs.size()) {
        throw CycleDetected("unreachable nodes in tree description");
    }

    GameTree out;
    out.players_ = players;
    out.depth_cap_ = depth_cap;
    out.nodes_.resize(descs.size());
    out.depth_.assign(descs.size(), 0);
    for (std::size_t bfs = 0; bfs < order.size(); ++bfs) {
        const NodeDesc& d = descs[index_of[order[bfs]]];
        Node n;
        n.player = d.player;
        n.actions = d.actions;
        n.utility = d.utility;
        if (d.prior) {
            n.prior = *d.prior;
        } else {
            n.prior.assign(d.actions.size(), 1.0 / static_cast<double>(d.actions.size()));
        }
        n.children.reserve(d.children.size());
        for (const Child& c : d.children) {
            if (const auto* cid = std::get_if<NodeId>(&c)) {
                n.children.emplace_back(new_id.at(*cid));
            } else {
                n.children.push_back(c);
            }
        }
        out.nodes_[bfs] = std::move(n);
    }
    for (NodeId id = 0; id < out.nodes_.size(); ++id) {
        for (const Child& c : out.nodes_[id].children) {
            if (const auto* cid = std::get_if<NodeId>(&c)) {
                out.depth_[*cid] = out.depth_[id] + 1;
                out.max_depth_ = std::max(out.max_depth_, out.depth_[*cid]);
            }
        }
    }
    return out;
}

void validate_policy(const GameTree& tree, const Policy& policy) {
    if (policy.size() < tree.node_count()) {
        throw MissingNodePolicy("policy covers " + std::to_string(policy.size()) + " of " +
                                std::to_string(tree.node_count()) + " nodes");
    }
    for (NodeId id = 0; id < tree.node_count(); ++id) {
        if (policy[id].size() != tree.node(id).actions.size()) {
            throw MissingNodePolicy("policy for node " + std::to_string(id) +
                                    " has wrong arity");
        }
    }
}

std::vector<double> node_utilities(const GameTree& tree, NodeId id, const Policy& policy,
                                   const std::vector<std::vector<double>>& values) {
    const Node& n = tree.node(id);
    std::vector<double> u(n.actions.size(), 0.0);
    if (std::holds_alternative<ExpectedContinuation>(n.utility)) {
        for (std::size_t a = 0; a < n.children.size(); ++a) {
            if (const auto* t = std::get_if<Terminal>(&n.children[a])) {
                u[a] = t->payoffs[n.player];
            } else {
                u[a] = values[std::get<NodeId>(n.children[a])][n.player];
            }
        }
        return u;
    }
    if (const auto* tab = std::get_if<UtilityTable>(&n.utility)) {
        return tab->values;
    }
    // level rules: read the next level's play, or the prior at the chain bottom
    const std::vector<double>* lower = &n.prior;
    for (const Child& c : n.children) {
        if (const auto* cid = std::get_if<NodeId>(&c)) {
            lower = &policy[*cid];
            break;
        }
    }
    if (const auto* mk = std::get_if<MarketEntryUtility>(&n.utility)) {
        const double enter_u =
            mk->entry_base + mk->entry_slope * (mk->capacity - mk->population * (*lower)[mk->enter_index]);
        for (std::size_t a = 0; a < n.actions.size(); ++a) {
            u[a] = (a == mk->enter_index) ? enter_u : mk->stay_payoff;
        }
        return u;
    }
    const auto& gt = std::get<GuessTargetUtility>(n.utility);
    const double target = gt.fraction * num::dot(gt.action_values, *lower);
    for (std::size_t a = 0; a < n.actions.size(); ++a) {
        u[a] = -std::abs(gt.action_values[a] - target);
    }
    return u;
}

std::vector<std::vector<double>> policy_values(const GameTree& tree, const Policy& policy) {
    validate_policy(tree, policy);
    const int players = tree.players();
    std::vector<std::vector<double>> values(tree.node_count(),
                                            std::vector<double>(players, 0.0));
    // children always carry larger ids (BFS order), so one reverse sweep works
    for (std::size_t i = tree.node_count(); i-- > 0;) {
        const Node& n = tree.node(i);
        std::vector<double>& v = values[i];
        for (std::size_t a = 0; a < n.children.size(); ++a) {
            const double w = policy[i][a];
            if (const auto* t = std::get_if<Terminal>(&n.children[a])) {
                for (int p = 0; p < players; ++p) v[p] += w * t->payoffs[p];
            } else {
                const NodeId c = std::get<NodeId>(n.children[a]);
                for (int p = 0; p < players; ++p) v[p] += w * values[c][p];
            }
        }
        // Rule nodes: the acting player's stake is the rule utility, not the
        // (zero) terminal backup of the chain.
        if (!std::holds_alternative<ExpectedContinuation>(n.utility)) {
            const std::vector<double> u = node_utilities(tree, i, policy, values);
            v[n.player] = num::dot(policy[i], u);
        }
    }
    return values;
}

double expected_payoff(const GameTree& tree, const Policy& policy, int player) {
    if (player < 0 || player >= tree.players()) {
        throw DataError("player index out of range");
    }
    validate_policy(tree, policy);
    std::vector<std::vector<double>> values(tree.node_count(),
                                            std::vector<double>(1, 0.0));
    for (std::size_t i = tree.node_count(); i-- > 0;) {
        const Node& n = tree.node(i);
        double v = 0.0;
        for (std::size_t a = 0; a < n.children.size(); ++a) {
            if (const auto* t = std::get_if<Terminal>(&n.children[a])) {
                v += policy[i][a] * t->payoffs[player];
            } else {
                v += policy[i][a] * values[std::get<NodeId>(n.children[a])][0];
            }
        }
        values[i][0] = v;
    }
    return values[0][0];
}

}  // namespace qh::tree
