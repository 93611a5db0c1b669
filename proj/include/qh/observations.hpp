#pragma once

#include <map>
#include <string>
#include <vector>

#include "qh/density.hpp"
#include "qh/games.hpp"

namespace qh::obs {

// One raw unit of data: a single decision/choice in a single game.
//   market     action = "enter" | "stay_out"
//   beauty     action = integer guess "0".."100"
//   centipede  action = "take_1".."take_m" | "pass_all"
//   bargaining action = integer request "0".."100"
struct Observation {
    std::string game_key;
    std::string role;
    std::string action;
};

// Parsed, validated dataset. Records with count > 1 are expanded into units
// so cross-validation can split at the raw-observation level.
struct ObservationSet {
    std::vector<Observation> units;

    // units grouped by game key (indices into `units`)
    std::map<std::string, std::vector<std::size_t>> by_game;
};

// CSV schema (one record per observation): game,role,action,count
// Header required. Count must be a positive integer. Unknown game keys,
// unknown roles/actions for the game, or negative counts are DataErrors
// naming the offending record.
ObservationSet load_observations_csv(const std::string& path);
ObservationSet parse_observations_csv(const std::string& text, const std::string& origin);
void save_observations_csv(const ObservationSet& set, const std::string& path);

// Role accepted for a game family (single-role schema).
std::string expected_role(games::GameClass cls);

// Observation-space target vector for one game from a subset of unit indices:
//   market     -> {entry rate}
//   beauty     -> KDE-smoothed distribution over 0..100
//   centipede  -> outcome frequencies
//   bargaining -> KDE-smoothed distribution over 0..100
std::vector<double> target_vector(const games::Game& game,
                                  const std::vector<Observation>& units,
                                  const std::vector<std::size_t>& subset,
                                  density::BandwidthRule rule);

// Concatenated target over an experiment (market: per-capacity entry rates).
std::vector<double> experiment_target(const games::Experiment& exp,
                                      const ObservationSet& set,
                                      const std::vector<std::size_t>& subset,
                                      density::BandwidthRule rule);

}  // namespace qh::obs
