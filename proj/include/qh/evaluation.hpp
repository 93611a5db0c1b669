#pragma once

#include <string>
#include <vector>

#include "qh/models.hpp"

namespace qh::eval {

// Root-mean-square difference of two equally-long vectors.
double rmse(const std::vector<double>& predicted, const std::vector<double>& observed);

struct ErrorRow {
    std::string game_class;
    std::string experiment;
    std::vector<double> errors;  // one per model, column order fixed per table
};

struct RankRow {
    std::string game_class;
    std::string experiment;
    std::vector<double> errors;
    std::vector<double> ranks;  // tie-averaged, 1 = best
};

struct RankTable {
    std::vector<std::string> model_names;
    std::vector<RankRow> rows;
    std::vector<std::string> class_names;              // in first-appearance order
    std::vector<std::vector<double>> class_average;    // [class][model]
    std::vector<double> overall;                       // mean of class averages
};

// Tie-averaged ranks per row (ties share the mean of the positions they
// occupy), per-class average ranks, and an overall rank that weights every
// game class equally.
RankTable rank_models(const std::vector<std::string>& model_names,
                      const std::vector<ErrorRow>& rows);

struct RankRange {
    double best = 0.0;
    double median = 0.0;
    double worst = 0.0;
};

// Per-model (best, median, worst) over the table's per-experiment ranks.
std::vector<RankRange> rank_range_summary(const RankTable& table);

// Tie-averaged ranks of one error vector (1 = smallest error).
std::vector<double> tie_average_ranks(const std::vector<double>& errors);

}  // namespace qh::eval
