#include "qh/games.hpp"

#include <algorithm>
#include <cmath>

namespace qh::games {

std::string game_class_name(GameClass c) {
    switch (c) {
        case GameClass::Market: return "market";
        case GameClass::Beauty: return "beauty";
        case GameClass::Centipede: return "centipede";
        case GameClass::Bargaining: return "bargaining";
    }
    return "?";
}

namespace {

std::vector<std::string> integer_actions(int grid_max) {
    std::vector<std::string> a;
    a.reserve(static_cast<std::size_t>(grid_max) + 1);
    for (int i = 0; i <= grid_max; ++i) a.push_back(std::to_string(i));
    return a;
}

std::vector<double> integer_values(int grid_max) {
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(grid_max) + 1);
    for (int i = 0; i <= grid_max; ++i) v.push_back(static_cast<double>(i));
    return v;
}

// Reasoning chain shared by the market and beauty builders: `levels` internal
// nodes, every action leading to the next level, zero terminals at the bottom.
tree::GameTree build_chain(std::size_t levels, const std::vector<std::string>& actions,
                           const tree::UtilityKind& utility) {
    if (levels == 0) levels = 1;
    std::vector<tree::NodeDesc> descs;
    descs.reserve(levels);
    for (std::size_t level = 0; level < levels; ++level) {
        tree::NodeDesc d;
        d.id = level;
        d.player = 0;
        d.actions = actions;
        d.utility = utility;
        if (level + 1 < levels) {
            d.children.assign(actions.size(), tree::Child{tree::NodeId{level + 1}});
        } else {
            d.children.assign(actions.size(), tree::Child{tree::Terminal{{0.0}}});
        }
        descs.push_back(std::move(d));
    }
    return tree::GameTree::build(descs, 1, std::nullopt);
}

}  // namespace

tree::GameTree build_market(const MarketSpec& spec, int capacity, std::size_t levels) {
    if (std::find(spec.capacities.begin(), spec.capacities.end(), capacity) ==
        spec.capacities.end()) {
        throw CapacityOutOfRange("capacity " + std::to_string(capacity) +
                                 " is not on the capacity grid");
    }
    tree::MarketEntryUtility u;
    u.capacity = static_cast<double>(capacity);
    u.population = static_cast<double>(spec.n_players);
    u.stay_payoff = spec.stay_payoff;
    u.entry_base = spec.entry_base;
    u.entry_slope = spec.entry_slope;
    u.enter_index = 1;
    return build_chain(levels, {"stay_out", "enter"}, u);
}

tree::GameTree build_beauty(const BeautySpec& spec, std::size_t levels) {
    tree::GuessTargetUtility u;
    u.fraction = spec.p;
    u.action_values = integer_values(spec.grid_max);
    return build_chain(levels, integer_actions(spec.grid_max), u);
}

CentipedeSchedule centipede_schedule(int moves) {
    if (moves != 4 && moves != 6) throw ConfigError("centipede supports 4 or 6 moves");
    CentipedeSchedule s;
    double large = 0.4;
    double small = 0.1;
    for (int j = 1; j <= moves; ++j) {
        const bool p1_takes = (j % 2 == 1);
        s.take_payoffs.push_back(p1_takes ? std::array<double, 2>{large, small}
                                          : std::array<double, 2>{small, large});
        large *= 2.0;
        small *= 2.0;
    }
    // passing at the last node pays what the next take would have
    s.final_pass_payoffs = {large, small};
    return s;
}

tree::GameTree build_centipede(const CentipedeSpec& spec) {
    const CentipedeSchedule s = centipede_schedule(spec.moves);
    std::vector<tree::NodeDesc> descs;
    for (int j = 0; j < spec.moves; ++j) {
        tree::NodeDesc d;
        d.id = static_cast<std::size_t>(j);
        d.player = j % 2;
        d.actions = {"take", "pass"};
        const auto& take = s.take_payoffs[static_cast<std::size_t>(j)];
        d.children.emplace_back(tree::Terminal{{take[0], take[1]}});
        if (j + 1 < spec.moves) {
            d.children.emplace_back(tree::NodeId{static_cast<std::size_t>(j + 1)});
        } else {
            d.children.emplace_back(
                tree::Terminal{{s.final_pass_payoffs[0], s.final_pass_payoffs[1]}});
        }
        descs.push_back(std::move(d));
    }
    return tree::GameTree::build(descs, 2, static_cast<std::size_t>(spec.moves));
}

tree::GameTree build_bargain(const BargainSpec& spec) {
    if (spec.stages == 1) {
        if (!(spec.v1 >= 0.0 && spec.v1 <= spec.grid_max && spec.v2 >= 0.0 &&
              spec.v2 <= spec.grid_max)) {
            throw InvalidRejectionPayoffs("rejection payoffs must lie in [0, " +
                                          std::to_string(spec.grid_max) + "]");
        }
    } else if (spec.stages == 2) {
        if (!(spec.disagreement > 0.0 && spec.disagreement < 1.0)) {
            throw ConfigError("disagreement penalty must lie in (0, 1)");
        }
    } else {
        throw ConfigError("bargaining supports 1 or 2 stages");
    }

    const int g = spec.grid_max;
    std::vector<tree::NodeDesc> descs;
    std::size_t next_id = 0;

    tree::NodeDesc root;
    root.id = next_id++;
    root.player = 0;
    root.actions = integer_actions(g);
    descs.push_back(tree::NodeDesc{});  // placeholder; filled after children exist

    // responder nodes are ordered [reject, accept]: at exact indifference the
    // deterministic baselines reject, which is what makes the all-or-nothing
    // request unprofitable
    for (int x = 0; x <= g; ++x) {
        tree::NodeDesc resp;
        resp.id = next_id++;
        resp.player = 1;
        resp.actions = {"reject", "accept"};
        const tree::Terminal accept_leaf{{static_cast<double>(x), static_cast<double>(g - x)}};
        if (spec.stages == 1) {
            resp.children = {tree::Child{tree::Terminal{{spec.v1, spec.v2}}},
                             tree::Child{accept_leaf}};
            root.children.emplace_back(tree::NodeId{resp.id});
            descs.push_back(std::move(resp));
        } else {
            // rejection opens player 2's counteroffer subtree
            tree::NodeDesc counter;
            counter.id = next_id++;
            counter.player = 1;
            counter.actions = integer_actions(g);
            for (int y = 0; y <= g; ++y) {
                tree::NodeDesc reply;
                reply.id = next_id++;
                reply.player = 0;
                reply.actions = {"reject", "accept"};
                reply.children = {
                    tree::Child{tree::Terminal{{0.0, 0.0}}},
                    tree::Child{tree::Terminal{{spec.disagreement * y,
                                                spec.disagreement * (g - y)}}}};
                counter.children.emplace_back(tree::NodeId{reply.id});
                descs.push_back(std::move(reply));
            }
            resp.children = {tree::Child{tree::NodeId{counter.id}}, tree::Child{accept_leaf}};
            root.children.emplace_back(tree::NodeId{resp.id});
            descs.push_back(std::move(resp));
            descs.push_back(std::move(counter));
        }
    }
    root.id = 0;
    descs[0] = std::move(root);
    return tree::GameTree::build(descs, 2, spec.stages == 1 ? 2u : 4u);
}

// --- registry ----------------------------------------------------------------

namespace {

const std::vector<std::string> kBeautyDatasets = {"lab",      "classroom", "takehome",
                                                  "internet", "newspaper", "theorists"};

struct UltimatumVariant {
    std::string key;
    double v1;
    double v2;
};
const std::vector<UltimatumVariant> kUltimatums = {
    {"10-10", 10.0, 10.0},
    {"10-60", 10.0, 60.0},
    {"70-10", 70.0, 10.0},
    {"worked", 0.0, 50.0},  // the single-request example with a fixed 50 rejection payoff
};

const std::vector<std::string> kTwoStageD = {"0.2", "0.3", "0.4", "0.5",
                                             "0.6", "0.7", "0.8", "0.9"};

Game make_market_game(int block, int capacity) {
    Game g;
    g.key = "market:block" + std::to_string(block) + ":c" + std::to_string(capacity);
    g.game_class = GameClass::Market;
    g.unbounded_horizon = true;
    g.experiment = "block" + std::to_string(block);
    g.market = MarketSpec{};
    g.capacity = capacity;
    return g;
}

}  // namespace

Game game_from_key(const std::string& key) {
    if (key.rfind("market:block", 0) == 0) {
        const std::string rest = key.substr(12);
        const auto colon = rest.find(":c");
        if (colon != std::string::npos) {
            try {
                const int block = std::stoi(rest.substr(0, colon));
                const int capacity = std::stoi(rest.substr(colon + 2));
                if (block >= 1 && block <= 5) {
                    const MarketSpec spec;
                    if (std::find(spec.capacities.begin(), spec.capacities.end(), capacity) !=
                        spec.capacities.end()) {
                        return make_market_game(block, capacity);
                    }
                }
            } catch (const std::exception&) {
            }
        }
    } else if (key.rfind("beauty:", 0) == 0) {
        const std::string name = key.substr(7);
        if (std::find(kBeautyDatasets.begin(), kBeautyDatasets.end(), name) !=
            kBeautyDatasets.end()) {
            Game g;
            g.key = key;
            g.game_class = GameClass::Beauty;
            g.unbounded_horizon = true;
            g.experiment = name;
            g.beauty = BeautySpec{};
            return g;
        }
    } else if (key == "centipede:4" || key == "centipede:6") {
        Game g;
        g.key = key;
        g.game_class = GameClass::Centipede;
        g.experiment = key.substr(10) + "-move";
        g.centipede = CentipedeSpec{key == "centipede:4" ? 4 : 6};
        return g;
    } else if (key.rfind("ultimatum:", 0) == 0) {
        const std::string name = key.substr(10);
        for (const auto& v : kUltimatums) {
            if (v.key == name) {
                Game g;
                g.key = key;
                g.game_class = GameClass::Bargaining;
                g.experiment = "ultimatum-" + name;
                g.bargain = BargainSpec{1, v.v1, v.v2, 0.9, 100};
                return g;
            }
        }
    } else if (key.rfind("twostage:D", 0) == 0) {
        const std::string d = key.substr(10);
        if (std::find(kTwoStageD.begin(), kTwoStageD.end(), d) != kTwoStageD.end()) {
            Game g;
            g.key = key;
            g.game_class = GameClass::Bargaining;
            g.experiment = "twostage-D" + d;
            g.bargain = BargainSpec{2, 0.0, 0.0, std::stod(d), 100};
            return g;
        }
    }
    throw UnknownGameKey("unknown game key: " + key + " (see `list-games`)");
}

std::vector<std::string> all_game_keys() {
    std::vector<std::string> keys;
    const MarketSpec spec;
    for (int block = 1; block <= 5; ++block) {
        for (int c : spec.capacities) {
            keys.push_back("market:block" + std::to_string(block) + ":c" + std::to_string(c));
        }
    }
    for (const auto& name : kBeautyDatasets) keys.push_back("beauty:" + name);
    keys.push_back("centipede:4");
    keys.push_back("centipede:6");
    for (const auto& v : kUltimatums) keys.push_back("ultimatum:" + v.key);
    for (const auto& d : kTwoStageD) keys.push_back("twostage:D" + d);
    return keys;
}

tree::GameTree Game::tree() const {
    if (unbounded_horizon) {
        throw ConfigError("game " + key +
                          " has no fixed horizon; its reasoning chain is materialized "
                          "per solve parameters");
    }
    if (centipede) return build_centipede(*centipede);
    if (bargain) return build_bargain(*bargain);
    throw ConfigError("game " + key + " has no tree builder");
}

Experiment experiment_for_game(const Game& game) {
    Experiment exp;
    exp.game_class = game.game_class;
    exp.label = game.experiment;
    if (game.game_class == GameClass::Market) {
        const int block = std::stoi(game.experiment.substr(5));
        for (int c : game.market->capacities) exp.games.push_back(make_market_game(block, c));
    } else {
        exp.games.push_back(game);
    }
    return exp;
}

}  // namespace qh::games
