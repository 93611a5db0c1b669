#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qh/errors.hpp"

namespace qh::tree {

using NodeId = std::size_t;

struct Terminal {
    std::vector<double> payoffs;  // one entry per player
};

// Each action leads either to another decision node or to a terminal payoff.
using Child = std::variant<NodeId, Terminal>;

// How a node's per-action utilities (for its acting player) are produced.
//
// ExpectedContinuation is the default for genuinely sequential games: the
// utility of an action is the acting player's expected payoff of the subtree
// it leads to, under the continuation policy already backed up below.
//
// The two level rules cover the pseudo-sequential encoding of simultaneous
// games, where every action of a reasoning level leads to the same next-level
// node and the utilities are a function of that level's play.
struct ExpectedContinuation {};

struct UtilityTable {
    std::vector<double> values;  // fixed utility per action
};

// stay-out pays `stay_payoff`; entering pays
// entry_base + entry_slope * (capacity - population * f_next[enter])
struct MarketEntryUtility {
    double capacity = 0.0;
    double population = 20.0;
    double stay_payoff = 1.0;
    double entry_base = 1.0;
    double entry_slope = 2.0;
    std::size_t enter_index = 1;  // which action is "enter"
};

// utility of a guess is the negated distance to fraction * (mean of the next
// level's guess distribution); action_values give the numeric guess per action
struct GuessTargetUtility {
    double fraction = 2.0 / 3.0;
    std::vector<double> action_values;
};

using UtilityKind =
    std::variant<ExpectedContinuation, UtilityTable, MarketEntryUtility, GuessTargetUtility>;

struct Node {
    int player = 0;
    std::vector<std::string> actions;
    std::vector<Child> children;  // same length as actions
    std::vector<double> prior;    // normalized; uniform unless overridden
    UtilityKind utility{};
};

// One probability vector per node, indexed by NodeId.
using Policy = std::vector<std::vector<double>>;

// Input record for build(). Ids are caller-chosen; build() reassigns ids in
// breadth-first order from the root (the unique node never referenced as a
// child) and validates the structure.
struct NodeDesc {
    std::size_t id = 0;
    int player = 0;
    std::vector<std::string> actions;
    std::vector<Child> children;  // NodeId entries refer to input ids
    std::optional<std::vector<double>> prior;
    UtilityKind utility{};
};

class GameTree {
public:
    GameTree() = default;  // empty tree; fill via build()

    static GameTree build(const std::vector<NodeDesc>& descs, int players,
                          std::optional<std::size_t> depth_cap = std::nullopt);

    std::size_t node_count() const { return nodes_.size(); }
    const Node& node(NodeId id) const { return nodes_[id]; }
    int players() const { return players_; }
    std::optional<std::size_t> depth_cap() const { return depth_cap_; }
    std::size_t depth(NodeId id) const { return depth_[id]; }
    std::size_t max_depth() const { return max_depth_; }

    const std::vector<Node>& nodes() const { return nodes_; }

private:
    std::vector<Node> nodes_;
    std::vector<std::size_t> depth_;
    std::size_t max_depth_ = 0;
    int players_ = 1;
    std::optional<std::size_t> depth_cap_;
};

// Per-action utilities of node `id` for its acting player, given the policies
// and per-player values already known for deeper nodes. This is the single
// definition of U[a_k | a_<k] used by every solver:
//   ExpectedContinuation  value of the chosen child for the acting player
//   UtilityTable          the fixed table entry
//   MarketEntryUtility    stay pays stay_payoff; entering pays
//                         entry_base + entry_slope*(capacity - population*f_next[enter])
//   GuessTargetUtility    -(distance to fraction * mean of the next level's play)
// Level rules read the next level's play from the child node's policy row, or
// fall back to this node's prior when every child is terminal (the level below
// the materialized chain is the naive prior player).
std::vector<double> node_utilities(const GameTree& tree, NodeId id, const Policy& policy,
                                   const std::vector<std::vector<double>>& values);

// Expectation of `player`'s terminal payoff under the product of per-node
// action probabilities along each root-to-leaf path.
double expected_payoff(const GameTree& tree, const Policy& policy, int player);

// Per-node expected payoff vectors (one entry per player) under `policy`.
// Nodes carrying a level rule report the rule utility for their acting player.
std::vector<std::vector<double>> policy_values(const GameTree& tree, const Policy& policy);

void validate_policy(const GameTree& tree, const Policy& policy);

// --- serialization (JSON; see docs/formats.md) ---
std::string to_json(const GameTree& tree);
GameTree from_json(const std::string& text);
void save_tree(const GameTree& tree, const std::string& path);
GameTree load_tree(const std::string& path);

}  // namespace qh::tree
