#pragma once

#include <span>
#include <string>
#include <vector>

namespace qh::density {

enum class BandwidthRule { Scott, Silverman, SheatherJones };

BandwidthRule bandwidth_rule_from_string(const std::string& name);
std::string bandwidth_rule_name(BandwidthRule rule);

struct KDEModel {
    std::vector<double> samples;
    double bandwidth = 1.0;
    BandwidthRule rule = BandwidthRule::Scott;
    int grid_max = 100;     // evaluation grid 0..grid_max
    bool degenerate = false;  // all samples identical; bandwidth floored
};

// Gaussian KDE with automatic bandwidth:
//   Scott          sigma * n^(-1/5)
//   Silverman      0.9 * min(sigma, IQR/1.34) * n^(-1/5)
//   SheatherJones  solve-the-equation plug-in
// Degenerate samples get the 1e-3 bandwidth floor and a warning flag.
KDEModel fit_kde(std::span<const double> samples, BandwidthRule rule, int grid_max = 100);

// Kernels summed on the integer grid and renormalized to a distribution
// (truncation at the grid bounds, no reflection).
std::vector<double> evaluate(const KDEModel& model);

// Convenience: fit + evaluate.
std::vector<double> smooth_to_grid(std::span<const double> samples, BandwidthRule rule,
                                   int grid_max = 100);

}  // namespace qh::density
