#pragma once

#include <string>
#include <vector>

#include "qh/report.hpp"
#include "qh/sensitivity.hpp"
#include "qh/solve.hpp"

namespace qh::plot {

// beta,gamma,expected_payoff rows
std::string heatmap_csv(const solve::HeatmapResult& grid);

// One series per model plus the observed series for an experiment:
// axis,model,value with a metadata comment header (includes the
// backward-induction mode of the root distribution where applicable).
std::string series_csv(const games::Experiment& exp,
                       const std::vector<std::string>& model_names,
                       const std::vector<std::vector<double>>& predictions,
                       const std::vector<double>& observed,
                       const std::vector<std::string>& metadata);

// epsilon,max_deviation rows plus the baseline prediction block
std::string sensitivity_csv(const sens::SweepResult& sweep);

}  // namespace qh::plot
