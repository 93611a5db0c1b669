#include "qh/observations.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "qh/numerics.hpp"

namespace qh::obs {

std::string expected_role(games::GameClass cls) {
    switch (cls) {
        case games::GameClass::Market: return "player";
        case games::GameClass::Beauty: return "guesser";
        case games::GameClass::Centipede: return "outcome";
        case games::GameClass::Bargaining: return "proposer";
    }
    return "?";
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

void validate_action(const games::Game& game, const std::string& action,
                     const std::string& where) {
    switch (game.game_class) {
        case games::GameClass::Market:
            if (action != "enter" && action != "stay_out") {
                throw DataError(where + ": market action must be enter or stay_out, got \"" +
                                action + "\"");
            }
            return;
        case games::GameClass::Centipede: {
            const int m = game.centipede->moves;
            if (action == "pass_all") return;
            for (int j = 1; j <= m; ++j) {
                if (action == "take_" + std::to_string(j)) return;
            }
            throw DataError(where + ": unknown centipede outcome \"" + action + "\"");
        }
        case games::GameClass::Beauty:
        case games::GameClass::Bargaining: {
            int grid = game.game_class == games::GameClass::Beauty ? game.beauty->grid_max
                                                                   : game.bargain->grid_max;
            try {
                std::size_t pos = 0;
                const double v = std::stod(action, &pos);
                if (pos == action.size() && v >= 0.0 && v <= grid) return;
            } catch (const std::exception&) {
            }
            throw DataError(where + ": choice \"" + action + "\" is not a number in [0, " +
                            std::to_string(grid) + "]");
        }
    }
}

}  // namespace

ObservationSet parse_observations_csv(const std::string& text, const std::string& origin) {
    ObservationSet set;
    std::stringstream ss(text);
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    while (std::getline(ss, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const std::string where = origin + ":" + std::to_string(lineno);
        std::vector<std::string> fields = split_csv_line(line);
        if (!header_seen) {
            if (fields != std::vector<std::string>{"game", "role", "action", "count"}) {
                throw DataError(where + ": expected header game,role,action,count");
            }
            header_seen = true;
            continue;
        }
        if (fields.size() != 4) {
            throw DataError(where + ": expected 4 fields, got " +
                            std::to_string(fields.size()));
        }
        const games::Game game = [&] {
            try {
                return games::game_from_key(fields[0]);
            } catch (const UnknownGameKey& e) {
                throw DataError(where + ": " + e.what());
            }
        }();
        if (fields[1] != expected_role(game.game_class)) {
            throw DataError(where + ": role for " + games::game_class_name(game.game_class) +
                            " games is \"" + expected_role(game.game_class) + "\", got \"" +
                            fields[1] + "\"");
        }
        validate_action(game, fields[2], where);
        long count = 0;
        try {
            std::size_t pos = 0;
            count = std::stol(fields[3], &pos);
            if (pos != fields[3].size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw DataError(where + ": count \"" + fields[3] + "\" is not an integer");
        }
        if (count < 0) throw DataError(where + ": negative count " + std::to_string(count));
        for (long i = 0; i < count; ++i) {
            set.by_game[fields[0]].push_back(set.units.size());
            set.units.push_back(Observation{fields[0], fields[1], fields[2]});
        }
    }
    if (!header_seen) throw DataError(origin + ": empty observation file");
    return set;
}

ObservationSet load_observations_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_observations_csv(ss.str(), path);
}

void save_observations_csv(const ObservationSet& set, const std::string& path) {
    // aggregate equal rows back into counts, preserving first-seen order
    std::vector<std::pair<Observation, long>> rows;
    for (const Observation& o : set.units) {
        bool merged = false;
        if (!rows.empty()) {
            auto& last = rows.back();
            if (last.first.game_key == o.game_key && last.first.role == o.role &&
                last.first.action == o.action) {
                ++last.second;
                merged = true;
            }
        }
        if (!merged) rows.emplace_back(o, 1);
    }
    std::ofstream out(path);
    if (!out) throw DataError("cannot open " + path + " for writing");
    out << "game,role,action,count\n";
    for (const auto& [o, count] : rows) {
        out << o.game_key << "," << o.role << "," << o.action << "," << count << "\n";
    }
}

std::vector<double> target_vector(const games::Game& game,
                                  const std::vector<Observation>& units,
                                  const std::vector<std::size_t>& subset,
                                  density::BandwidthRule rule) {
    std::vector<const Observation*> mine;
    for (std::size_t idx : subset) {
        if (units[idx].game_key == game.key) mine.push_back(&units[idx]);
    }
    if (mine.empty()) {
        throw EmptyObservations("no observations for " + game.key);
    }
    switch (game.game_class) {
        case games::GameClass::Market: {
            double enter = 0.0;
            for (const Observation* o : mine) enter += (o->action == "enter") ? 1.0 : 0.0;
            return {enter / static_cast<double>(mine.size())};
        }
        case games::GameClass::Centipede: {
            const int m = game.centipede->moves;
            std::vector<double> freq(static_cast<std::size_t>(m) + 1, 0.0);
            for (const Observation* o : mine) {
                if (o->action == "pass_all") {
                    freq[static_cast<std::size_t>(m)] += 1.0;
                } else {
                    const int j = std::stoi(o->action.substr(5));
                    freq[static_cast<std::size_t>(j - 1)] += 1.0;
                }
            }
            for (double& f : freq) f /= static_cast<double>(mine.size());
            return freq;
        }
        case games::GameClass::Beauty:
        case games::GameClass::Bargaining: {
            std::vector<double> samples;
            samples.reserve(mine.size());
            for (const Observation* o : mine) samples.push_back(std::stod(o->action));
            const int grid = game.game_class == games::GameClass::Beauty
                                 ? game.beauty->grid_max
                                 : game.bargain->grid_max;
            return density::smooth_to_grid(samples, rule, grid);
        }
    }
    throw DataError("unreachable game class");
}

std::vector<double> experiment_target(const games::Experiment& exp,
                                      const ObservationSet& set,
                                      const std::vector<std::size_t>& subset,
                                      density::BandwidthRule rule) {
    std::vector<double> out;
    for (const games::Game& g : exp.games) {
        const std::vector<double> v = target_vector(g, set.units, subset, rule);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

}  // namespace qh::obs
