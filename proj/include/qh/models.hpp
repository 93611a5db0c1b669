#pragma once

#include <string>
#include <variant>
#include <vector>

#include "qh/baselines.hpp"
#include "qh/games.hpp"
#include "qh/solve.hpp"

namespace qh::models {

struct QHSpec {
    double beta = 1.0;
    double gamma = 0.5;
    double epsilon = 1e-8;
};
struct QRESpec {
    double lambda = 1.0;
};
struct AgentQRESpec {
    double lambda = 1.0;
};
struct LevelKSpec {
    int k = 1;
};
struct CHSpec {
    double tau = 1.5;
    int level_cap = 30;
};
struct NashSpec {};

using ModelSpec = std::variant<QHSpec, QRESpec, AgentQRESpec, LevelKSpec, CHSpec, NashSpec>;

enum class Family { QH, QRE, AgentQRE, LevelK, CH, Nash };

Family family_of(const ModelSpec& spec);
std::string family_name(Family f);
std::string describe(const ModelSpec& spec);

// Strict "family:key=value,..." grammar; unknown families or keys are errors.
ModelSpec parse_model_spec(const std::string& text);

// Families ranked against each other by default (the Table-1 columns).
std::vector<Family> default_families();

// Materializes the game tree a QH solve needs: the explicit tree for finite
// games, or the reasoning chain cut at the epsilon-termination depth.
tree::GameTree materialize_tree(const games::Game& game, const solve::QHParams& params);

// Full per-node policy of `model` on `game` (the `predict` command surface).
struct Prediction {
    tree::GameTree tree;      // tree the policy refers to
    tree::Policy policy;
    std::vector<double> root_distribution;  // policy at the root
};
Prediction predict_policy(const games::Game& game, const ModelSpec& model);

// Observation-space prediction vector for one game:
//   market     -> {entry probability} (length 1)
//   beauty     -> distribution over guesses 0..100
//   centipede  -> outcome distribution (take_1..take_m, pass_all)
//   bargaining -> distribution over requests 0..100
std::vector<double> predict_distribution(const games::Game& game, const ModelSpec& model);

// Prediction for a whole experiment: concatenation of per-game vectors
// (market: entry probability per capacity; others: the single game vector).
std::vector<double> predict_experiment(const games::Experiment& exp, const ModelSpec& model);

// Labels for the entries of predict_experiment's vector.
std::vector<std::string> experiment_axis_labels(const games::Experiment& exp);

// Outcome distribution induced by a policy on a finite tree: probability of
// reaching each terminal, in depth-first leaf order.
std::vector<double> outcome_distribution(const tree::GameTree& tree, const tree::Policy& policy);

}  // namespace qh::models
