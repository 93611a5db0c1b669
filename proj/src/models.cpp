#include "qh/models.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "qh/numerics.hpp"

namespace qh::models {

Family family_of(const ModelSpec& spec) {
    if (std::holds_alternative<QHSpec>(spec)) return Family::QH;
    if (std::holds_alternative<QRESpec>(spec)) return Family::QRE;
    if (std::holds_alternative<AgentQRESpec>(spec)) return Family::AgentQRE;
    if (std::holds_alternative<LevelKSpec>(spec)) return Family::LevelK;
    if (std::holds_alternative<CHSpec>(spec)) return Family::CH;
    return Family::Nash;
}

std::string family_name(Family f) {
    switch (f) {
        case Family::QH: return "qh";
        case Family::QRE: return "qre";
        case Family::AgentQRE: return "agentqre";
        case Family::LevelK: return "levelk";
        case Family::CH: return "ch";
        case Family::Nash: return "nash";
    }
    return "?";
}

namespace {

std::string format_number(double v) {
    std::ostringstream ss;
    ss.precision(10);
    ss << v;
    return ss.str();
}

}  // namespace

std::string describe(const ModelSpec& spec) {
    if (const auto* q = std::get_if<QHSpec>(&spec)) {
        return "qh:beta=" + format_number(q->beta) + ",gamma=" + format_number(q->gamma);
    }
    if (const auto* q = std::get_if<QRESpec>(&spec)) {
        return "qre:lambda=" + format_number(q->lambda);
    }
    if (const auto* q = std::get_if<AgentQRESpec>(&spec)) {
        return "agentqre:lambda=" + format_number(q->lambda);
    }
    if (const auto* q = std::get_if<LevelKSpec>(&spec)) {
        return "levelk:k=" + std::to_string(q->k);
    }
    if (const auto* q = std::get_if<CHSpec>(&spec)) {
        return "ch:tau=" + format_number(q->tau);
    }
    return "nash";
}

ModelSpec parse_model_spec(const std::string& text) {
    const auto colon = text.find(':');
    const std::string family = text.substr(0, colon);
    std::map<std::string, std::string> kv;
    if (colon != std::string::npos) {
        std::stringstream rest(text.substr(colon + 1));
        std::string item;
        while (std::getline(rest, item, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos || eq == 0) {
                throw ConfigError("model spec: expected key=value, got \"" + item + "\"");
            }
            if (!kv.emplace(item.substr(0, eq), item.substr(eq + 1)).second) {
                throw ConfigError("model spec: duplicate key \"" + item.substr(0, eq) + "\"");
            }
        }
    }
    auto take_number = [&kv](const std::string& key) {
        auto it = kv.find(key);
        if (it == kv.end()) throw ConfigError("model spec: missing required key \"" + key + "\"");
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(it->second, &pos);
        } catch (const std::exception&) {
            throw ConfigError("model spec: bad number for \"" + key + "\"");
        }
        if (pos != it->second.size()) {
            throw ConfigError("model spec: bad number for \"" + key + "\"");
        }
        kv.erase(it);
        return v;
    };
    auto finish = [&kv]() {
        if (!kv.empty()) {
            throw ConfigError("model spec: unknown key \"" + kv.begin()->first + "\"");
        }
    };

    if (family == "qh") {
        QHSpec s;
        s.beta = take_number("beta");
        s.gamma = take_number("gamma");
        if (kv.count("epsilon")) s.epsilon = take_number("epsilon");
        finish();
        return s;
    }
    if (family == "qre") {
        QRESpec s{take_number("lambda")};
        finish();
        return s;
    }
    if (family == "agentqre") {
        AgentQRESpec s{take_number("lambda")};
        finish();
        return s;
    }
    if (family == "levelk") {
        const double k = take_number("k");
        finish();
        if (k < 0 || k != std::floor(k)) throw ConfigError("model spec: k must be a non-negative integer");
        return LevelKSpec{static_cast<int>(k)};
    }
    if (family == "ch") {
        CHSpec s;
        s.tau = take_number("tau");
        if (kv.count("level_cap")) {
            const double cap = take_number("level_cap");
            if (cap < 0 || cap != std::floor(cap)) {
                throw ConfigError("model spec: level_cap must be a non-negative integer");
            }
            s.level_cap = static_cast<int>(cap);
        }
        finish();
        return s;
    }
    if (family == "nash") {
        finish();
        return NashSpec{};
    }
    throw ConfigError("unknown model family \"" + family + "\"");
}

std::vector<Family> default_families() {
    return {Family::QH, Family::LevelK, Family::CH, Family::QRE, Family::Nash};
}

// --- tree materialization ----------------------------------------------------

namespace {

constexpr std::size_t kMaxChainLevels = 100000;

std::size_t chain_levels(const solve::QHParams& params) {
    const std::size_t k = solve::effective_depth(params);
    if (k + 1 > kMaxChainLevels) {
        throw SolverError("termination depth " + std::to_string(k) +
                          " too large to materialize; lower gamma or raise epsilon");
    }
    return k + 1;  // one extra level that echoes the prior
}

}  // namespace

tree::GameTree materialize_tree(const games::Game& game, const solve::QHParams& params) {
    if (!game.unbounded_horizon) return game.tree();
    params.validate();
    const std::size_t levels = chain_levels(params);
    if (game.game_class == games::GameClass::Market) {
        return games::build_market(*game.market, *game.capacity, levels);
    }
    return games::build_beauty(*game.beauty, levels);
}

// --- per-family predictions ----------------------------------------------------

namespace {

using games::Game;
using games::GameClass;

// one-level chain used to carry single-decision predictions on chain games
tree::GameTree stub_chain(const Game& game) {
    if (game.game_class == GameClass::Market) {
        return games::build_market(*game.market, *game.capacity, 1);
    }
    return games::build_beauty(*game.beauty, 1);
}

std::vector<double> one_hot_vec(std::size_t n, std::size_t index) {
    std::vector<double> v(n, 0.0);
    v[index] = 1.0;
    return v;
}

// market level responses: enter iff the lower level under-fills capacity,
// 50% entry at exact indifference
double market_level_response(const games::MarketSpec& spec, int capacity, double lower_entry) {
    const double excess = static_cast<double>(capacity) - spec.n_players * lower_entry;
    if (excess > 0.0) return 1.0;
    if (excess == 0.0) return 0.5;
    return 0.0;
}

double market_level_k_entry(const games::MarketSpec& spec, int capacity, int k, double level0) {
    double q = level0;
    for (int j = 0; j < k; ++j) q = market_level_response(spec, capacity, q);
    return q;
}

double market_ch_entry(const games::MarketSpec& spec, int capacity,
                       const baselines::CHParams& params) {
    const std::vector<double> w =
        baselines::truncated_poisson_weights(params.tau, params.level_cap);
    std::vector<double> level_entry{0.5};
    for (std::size_t k = 1; k < w.size(); ++k) {
        double mass = 0.0;
        double mix = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            mass += w[j];
            mix += w[j] * level_entry[j];
        }
        level_entry.push_back(market_level_response(spec, capacity, mix / mass));
    }
    return num::dot(w, level_entry);
}

std::vector<double> beauty_uniform(const games::BeautySpec& spec) {
    return std::vector<double>(static_cast<std::size_t>(spec.grid_max) + 1,
                               1.0 / (spec.grid_max + 1.0));
}

std::size_t beauty_nearest_guess(const games::BeautySpec& spec, double target) {
    std::size_t best = 0;
    double best_d = std::abs(0.0 - target);
    for (int a = 1; a <= spec.grid_max; ++a) {
        const double d = std::abs(static_cast<double>(a) - target);
        if (d < best_d) {
            best = static_cast<std::size_t>(a);
            best_d = d;
        }
    }
    return best;
}

double distribution_mean(const std::vector<double>& dist) {
    double m = 0.0;
    for (std::size_t a = 0; a < dist.size(); ++a) m += static_cast<double>(a) * dist[a];
    return m;
}

std::vector<double> beauty_level_k_distribution(const games::BeautySpec& spec, int k,
                                                std::vector<double> dist) {
    for (int j = 0; j < k; ++j) {
        const double target = spec.p * distribution_mean(dist);
        dist = one_hot_vec(dist.size(), beauty_nearest_guess(spec, target));
    }
    return dist;
}

std::vector<double> beauty_ch_distribution(const games::BeautySpec& spec,
                                           const baselines::CHParams& params) {
    const std::vector<double> w =
        baselines::truncated_poisson_weights(params.tau, params.level_cap);
    std::vector<std::vector<double>> levels{beauty_uniform(spec)};
    for (std::size_t k = 1; k < w.size(); ++k) {
        std::vector<double> blend(levels[0].size(), 0.0);
        double mass = 0.0;
        for (std::size_t j = 0; j < k; ++j) mass += w[j];
        for (std::size_t j = 0; j < k; ++j) {
            for (std::size_t a = 0; a < blend.size(); ++a) {
                blend[a] += w[j] / mass * levels[j][a];
            }
        }
        const double target = spec.p * distribution_mean(blend);
        levels.push_back(one_hot_vec(blend.size(), beauty_nearest_guess(spec, target)));
    }
    std::vector<double> out(levels[0].size(), 0.0);
    for (std::size_t k = 0; k < levels.size(); ++k) {
        for (std::size_t a = 0; a < out.size(); ++a) out[a] += w[k] * levels[k][a];
    }
    return out;
}

// logit equilibrium of the symmetric market entry game; bisection rescue for
// the saturated regime where damped iteration cycles
double market_qre_entry(const games::MarketSpec& spec, int capacity, double lambda) {
    baselines::QREParams params;
    params.lambda = lambda;
    auto payoffs = [&spec, capacity](const std::vector<double>& p) {
        return std::vector<double>{
            spec.stay_payoff,
            spec.entry_base + spec.entry_slope * (capacity - spec.n_players * p[1])};
    };
    const auto fp = baselines::logit_qre_fixed_point(payoffs, 2, params);
    if (fp.converged) return fp.strategy[1];
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const auto u = payoffs({1.0 - mid, mid});
        const double response = 1.0 / (1.0 + std::exp(-lambda * (u[1] - u[0])));
        if (response > mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<double> beauty_qre_distribution(const games::BeautySpec& spec, double lambda) {
    baselines::QREParams params;
    params.lambda = lambda;
    auto payoffs = [&spec](const std::vector<double>& p) {
        const double target = spec.p * distribution_mean(p);
        std::vector<double> u(p.size());
        for (std::size_t a = 0; a < u.size(); ++a) {
            u[a] = -std::abs(static_cast<double>(a) - target);
        }
        return u;
    };
    return baselines::logit_qre_fixed_point(payoffs, static_cast<std::size_t>(spec.grid_max) + 1,
                                            params)
        .strategy;
}

}  // namespace

Prediction predict_policy(const games::Game& game, const ModelSpec& model) {
    Prediction out;
    const bool chain_game = game.unbounded_horizon;

    if (const auto* qh = std::get_if<QHSpec>(&model)) {
        solve::QHParams params;
        params.beta = qh->beta;
        params.gamma = qh->gamma;
        params.epsilon = qh->epsilon;
        out.tree = materialize_tree(game, params);
        out.policy = solve::solve_qh(out.tree, params).policy;
    } else if (const auto* qre = std::get_if<QRESpec>(&model)) {
        if (game.game_class == GameClass::Market) {
            out.tree = stub_chain(game);
            const double q = market_qre_entry(*game.market, *game.capacity, qre->lambda);
            out.policy = {{1.0 - q, q}};
        } else if (game.game_class == GameClass::Beauty) {
            out.tree = stub_chain(game);
            out.policy = {beauty_qre_distribution(*game.beauty, qre->lambda)};
        } else {
            // sequential games use the agent form
            baselines::QREParams params;
            params.lambda = qre->lambda;
            out.tree = game.tree();
            out.policy = baselines::agent_qre(out.tree, params);
        }
    } else if (const auto* aqre = std::get_if<AgentQRESpec>(&model)) {
        if (chain_game) {
            throw ConfigError("agent-form QRE needs a finite game; " + game.key +
                              " has no fixed horizon");
        }
        baselines::QREParams params;
        params.lambda = aqre->lambda;
        out.tree = game.tree();
        out.policy = baselines::agent_qre(out.tree, params);
    } else if (const auto* lk = std::get_if<LevelKSpec>(&model)) {
        if (lk->k < 0) throw ConfigError("levelk: k must be >= 0");
        if (game.game_class == GameClass::Market) {
            out.tree = stub_chain(game);
            const double q = market_level_k_entry(*game.market, *game.capacity, lk->k, 0.5);
            out.policy = {{1.0 - q, q}};
        } else if (game.game_class == GameClass::Beauty) {
            out.tree = stub_chain(game);
            out.policy = {beauty_level_k_distribution(*game.beauty, lk->k,
                                                      beauty_uniform(*game.beauty))};
        } else {
            out.tree = game.tree();
            out.policy = baselines::level_k_tree_policy(out.tree, lk->k);
        }
    } else if (const auto* ch = std::get_if<CHSpec>(&model)) {
        baselines::CHParams params;
        params.tau = ch->tau;
        params.level_cap = ch->level_cap;
        if (game.game_class == GameClass::Market) {
            out.tree = stub_chain(game);
            const double q = market_ch_entry(*game.market, *game.capacity, params);
            out.policy = {{1.0 - q, q}};
        } else if (game.game_class == GameClass::Beauty) {
            out.tree = stub_chain(game);
            out.policy = {beauty_ch_distribution(*game.beauty, params)};
        } else {
            out.tree = game.tree();
            out.policy = baselines::cognitive_hierarchy_tree_policy(out.tree, params);
        }
    } else {
        // Nash
        if (game.game_class == GameClass::Market) {
            out.tree = stub_chain(game);
            const double q =
                static_cast<double>(*game.capacity) / game.market->n_players;
            out.policy = {{1.0 - q, q}};
        } else if (game.game_class == GameClass::Beauty) {
            out.tree = stub_chain(game);
            out.policy = {one_hot_vec(static_cast<std::size_t>(game.beauty->grid_max) + 1, 0)};
        } else {
            out.tree = game.tree();
            out.policy = baselines::backward_induction(out.tree).policy;
        }
    }

    out.root_distribution = out.policy[0];
    return out;
}

std::vector<double> outcome_distribution(const tree::GameTree& tree,
                                         const tree::Policy& policy) {
    tree::validate_policy(tree, policy);
    std::vector<double> out;
    // depth-first, action order; recursion depth is the tree depth
    auto walk = [&](auto&& self, tree::NodeId id, double prob) -> void {
        const tree::Node& n = tree.node(id);
        for (std::size_t a = 0; a < n.children.size(); ++a) {
            const double p = prob * policy[id][a];
            if (std::holds_alternative<tree::Terminal>(n.children[a])) {
                out.push_back(p);
            } else {
                self(self, std::get<tree::NodeId>(n.children[a]), p);
            }
        }
    };
    walk(walk, 0, 1.0);
    return out;
}

std::vector<double> predict_distribution(const games::Game& game, const ModelSpec& model) {
    const Prediction pred = predict_policy(game, model);
    switch (game.game_class) {
        case GameClass::Market:
            return {pred.root_distribution[1]};  // entry probability
        case GameClass::Beauty:
        case GameClass::Bargaining:
            return pred.root_distribution;
        case GameClass::Centipede:
            return outcome_distribution(pred.tree, pred.policy);
    }
    throw ConfigError("unreachable game class");
}

std::vector<double> predict_experiment(const games::Experiment& exp, const ModelSpec& model) {
    std::vector<double> out;
    for (const games::Game& g : exp.games) {
        const std::vector<double> v = predict_distribution(g, model);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

std::vector<std::string> experiment_axis_labels(const games::Experiment& exp) {
    std::vector<std::string> labels;
    if (exp.game_class == GameClass::Market) {
        for (const games::Game& g : exp.games) {
            labels.push_back("c" + std::to_string(*g.capacity));
        }
        return labels;
    }
    const games::Game& g = exp.games[0];
    if (exp.game_class == GameClass::Centipede) {
        for (int j = 1; j <= g.centipede->moves; ++j) labels.push_back("take_" + std::to_string(j));
        labels.push_back("pass_all");
        return labels;
    }
    const int grid = exp.game_class == GameClass::Beauty ? g.beauty->grid_max : g.bargain->grid_max;
    for (int a = 0; a <= grid; ++a) labels.push_back(std::to_string(a));
    return labels;
}

}  // namespace qh::models
