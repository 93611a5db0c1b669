#pragma once

#include <string>
#include <vector>

#include "qh/evaluation.hpp"
#include "qh/fitting.hpp"

namespace qh::report {

struct ExperimentReport {
    std::string game_class;
    std::string experiment;
    // parallel to model_names
    std::vector<double> rmse_mean;
    std::vector<double> rmse_std;
    std::vector<std::string> fitted_params;           // mean fitted params, printable
    std::vector<std::vector<fit::FitResult>> fits;    // per model, per fold
};

struct EvaluationReport {
    std::vector<std::string> model_names;
    std::vector<ExperimentReport> experiments;
    eval::RankTable ranks;
};

// report.csv: game_class,experiment,model,rmse_mean,rmse_std,rank
std::string report_csv(const EvaluationReport& rep);

// Aligned human-readable table; mirrors the csv plus class/overall ranks.
std::string report_text(const EvaluationReport& rep);

// Per-fold detail: game_class,experiment,model,repeat,fold,train_mse,test_rmse,params
std::string folds_csv(const EvaluationReport& rep);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace qh::report
