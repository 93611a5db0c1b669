#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qh/game_tree.hpp"

namespace qh::games {

enum class GameClass { Market, Beauty, Centipede, Bargaining };

std::string game_class_name(GameClass c);

// --- specs -----------------------------------------------------------------

struct MarketSpec {
    int n_players = 20;
    std::vector<int> capacities = {1, 3, 5, 7, 9, 11, 13, 15, 17, 19};
    double stay_payoff = 1.0;
    double entry_base = 1.0;
    double entry_slope = 2.0;
};

struct BeautySpec {
    double p = 2.0 / 3.0;
    int grid_max = 100;  // guesses 0..grid_max
};

struct CentipedeSpec {
    int moves = 4;  // 4 or 6
};

struct BargainSpec {
    int stages = 1;          // 1 = ultimatum, 2 = two-stage
    double v1 = 10.0;        // rejection payoffs (one-stage)
    double v2 = 10.0;
    double disagreement = 0.9;  // penalty D (two-stage)
    int grid_max = 100;         // integer requests 0..grid_max
};

// --- builders ----------------------------------------------------------------

// Pseudo-sequential reasoning chain for one capacity: `levels` internal nodes,
// every action of a level leading to the next level; the bottom level has
// zero-payoff terminals and echoes its prior. Single representative player.
tree::GameTree build_market(const MarketSpec& spec, int capacity, std::size_t levels);

// Reasoning chain over the guess grid; same chain layout as build_market.
tree::GameTree build_beauty(const BeautySpec& spec, std::size_t levels);

// Alternating take/pass tree with the doubling payoff schedule. Player 1
// moves first; pass at the last node pays the final pass payoffs.
tree::GameTree build_centipede(const CentipedeSpec& spec);

// Request node then per-request responder nodes ([reject, accept]); two-stage
// opens a counteroffer subtree behind every rejection, with disagreement-
// penalized payoffs and (0,0) after a double rejection.
tree::GameTree build_bargain(const BargainSpec& spec);

// take/pass payoff pairs (payoff to player 1, payoff to player 2) per node,
// plus the final pass payoffs; shared by build_centipede and tests.
struct CentipedeSchedule {
    std::vector<std::array<double, 2>> take_payoffs;
    std::array<double, 2> final_pass_payoffs;
};
CentipedeSchedule centipede_schedule(int moves);

// --- registry ----------------------------------------------------------------

// A single addressable game. Market games are one (block, capacity) cell;
// block only selects the dataset, not the structure.
struct Game {
    std::string key;
    GameClass game_class = GameClass::Market;
    bool unbounded_horizon = false;  // market/beauty reasoning chains
    std::string experiment;          // e.g. "block1", "lab", "4-move", "(10, 10)"

    std::optional<MarketSpec> market;
    std::optional<int> capacity;
    std::optional<BeautySpec> beauty;
    std::optional<CentipedeSpec> centipede;
    std::optional<BargainSpec> bargain;

    // Explicit tree for the finite games; chains are materialized per-params
    // via models::materialize_tree.
    tree::GameTree tree() const;
};

Game game_from_key(const std::string& key);  // throws UnknownGameKey
std::vector<std::string> all_game_keys();

// Experiment = the unit Table-1 rows are computed over. A market experiment
// spans all capacities of a block; every other experiment is one game.
struct Experiment {
    GameClass game_class;
    std::string label;
    std::vector<Game> games;
};

Experiment experiment_for_game(const Game& game);

}  // namespace qh::games
