#include <fstream>
#include <sstream>

#include "qh/game_tree.hpp"

#include <json.hpp>

namespace qh::tree {

using nlohmann::json;

namespace {

json child_to_json(const Child& c) {
    if (const auto* id = std::get_if<NodeId>(&c)) {
        return json{{"node", *id}};
    }
    return json{{"payoffs", std::get<Terminal>(c).payoffs}};
}

Child child_from_json(const json& j) {
    if (j.contains("node")) {
        return Child{j.at("node").get<NodeId>()};
    }
    if (j.contains("payoffs")) {
        return Child{Terminal{j.at("payoffs").get<std::vector<double>>()}};
    }
    throw DataError("child record needs either \"node\" or \"payoffs\"");
}

json utility_to_json(const UtilityKind& u) {
    if (const auto* tab = std::get_if<UtilityTable>(&u)) {
        return json{{"table", tab->values}};
    }
    if (const auto* mk = std::get_if<MarketEntryUtility>(&u)) {
        return json{{"market_entry",
                     {{"capacity", mk->capacity},
                      {"population", mk->population},
                      {"stay_payoff", mk->stay_payoff},
                      {"entry_base", mk->entry_base},
                      {"entry_slope", mk->entry_slope},
                      {"enter_index", mk->enter_index}}}};
    }
    if (const auto* gt = std::get_if<GuessTargetUtility>(&u)) {
        return json{{"guess_target",
                     {{"fraction", gt->fraction}, {"action_values", gt->action_values}}}};
    }
    return json{{"expected_continuation", true}};
}

UtilityKind utility_from_json(const json& j) {
    if (j.contains("table")) {
        return UtilityTable{j.at("table").get<std::vector<double>>()};
    }
    if (j.contains("market_entry")) {
        const json& m = j.at("market_entry");
        MarketEntryUtility mk;
        mk.capacity = m.at("capacity").get<double>();
        mk.population = m.at("population").get<double>();
        mk.stay_payoff = m.value("stay_payoff", 1.0);
        mk.entry_base = m.value("entry_base", 1.0);
        mk.entry_slope = m.value("entry_slope", 2.0);
        mk.enter_index = m.value("enter_index", std::size_t{1});
        return mk;
    }
    if (j.contains("guess_target")) {
        const json& g = j.at("guess_target");
        return GuessTargetUtility{g.at("fraction").get<double>(),
                                  g.at("action_values").get<std::vector<double>>()};
    }
    return ExpectedContinuation{};
}

}  // namespace

std::string to_json(const GameTree& tree) {
    json j;
    j["players"] = tree.players();
    if (tree.depth_cap()) j["depth_cap"] = *tree.depth_cap();
    json nodes = json::array();
    for (NodeId id = 0; id < tree.node_count(); ++id) {
        const Node& n = tree.node(id);
        json rec;
        rec["id"] = id;
        rec["player"] = n.player;
        rec["actions"] = n.actions;
        json children = json::array();
        for (const Child& c : n.children) children.push_back(child_to_json(c));
        rec["children"] = children;
        rec["prior"] = n.prior;
        if (!std::holds_alternative<ExpectedContinuation>(n.utility)) {
            rec["utility"] = utility_to_json(n.utility);
        }
        nodes.push_back(rec);
    }
    j["nodes"] = nodes;
    return j.dump(2);
}

GameTree from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw DataError(std::string("tree parse error: ") + e.what());
    }
    try {
        const int players = j.at("players").get<int>();
        std::optional<std::size_t> cap;
        if (j.contains("depth_cap")) cap = j.at("depth_cap").get<std::size_t>();
        std::vector<NodeDesc> descs;
        for (const json& rec : j.at("nodes")) {
            NodeDesc d;
            d.id = rec.at("id").get<std::size_t>();
            d.player = rec.at("player").get<int>();
            d.actions = rec.at("actions").get<std::vector<std::string>>();
            for (const json& c : rec.at("children")) d.children.push_back(child_from_json(c));
            if (rec.contains("prior")) d.prior = rec.at("prior").get<std::vector<double>>();
            if (rec.contains("utility")) d.utility = utility_from_json(rec.at("utility"));
            descs.push_back(std::move(d));
        }
        return GameTree::build(descs, players, cap);
    } catch (const json::exception& e) {
        throw DataError(std::string("tree schema error: ") + e.what());
    }
}

void save_tree(const GameTree& tree, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open " + path + " for writing");
    out << to_json(tree) << "\n";
}

GameTree load_tree(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

}  // namespace qh::tree
