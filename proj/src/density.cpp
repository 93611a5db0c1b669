#include "qh/density.hpp"

#include <cmath>
#include <numbers>

#include "qh/errors.hpp"
#include "qh/numerics.hpp"

namespace qh::density {

BandwidthRule bandwidth_rule_from_string(const std::string& name) {
    if (name == "scott") return BandwidthRule::Scott;
    if (name == "silverman") return BandwidthRule::Silverman;
    if (name == "sheather-jones" || name == "sj") return BandwidthRule::SheatherJones;
    throw ConfigError("unknown bandwidth rule \"" + name +
                      "\" (scott, silverman, sheather-jones)");
}

std::string bandwidth_rule_name(BandwidthRule rule) {
    switch (rule) {
        case BandwidthRule::Scott: return "scott";
        case BandwidthRule::Silverman: return "silverman";
        case BandwidthRule::SheatherJones: return "sheather-jones";
    }
    return "?";
}

namespace {

constexpr double kBandwidthFloor = 1e-3;

double gauss(double u) {
    return std::exp(-0.5 * u * u) / std::sqrt(2.0 * std::numbers::pi);
}

// 4th and 6th Gaussian derivative kernels, used by the plug-in functionals
double phi4(double u) {
    return (u * u * u * u - 6.0 * u * u + 3.0) * gauss(u);
}
double phi6(double u) {
    const double u2 = u * u;
    return (u2 * u2 * u2 - 15.0 * u2 * u2 + 45.0 * u2 - 15.0) * gauss(u);
}

double density_functional(std::span<const double> x, double h,
                          double (*kernel)(double), double kernel_at_zero) {
    const auto n = static_cast<double>(x.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            sum += kernel((x[i] - x[j]) / h);
        }
    }
    return (2.0 * sum + n * kernel_at_zero) / (n * (n - 1.0));
}

double silverman_scale(std::span<const double> x) {
    const double sigma = num::sample_stddev(x);
    std::vector<double> copy(x.begin(), x.end());
    const double iqr = num::quantile(copy, 0.75) - num::quantile(copy, 0.25);
    if (iqr > 0.0) return std::min(sigma, iqr / 1.34);
    return sigma;
}

// Sheather-Jones solve-the-equation plug-in with Gaussian kernels. Bisects
// the fixed-point equation h = (R(K) / (n * S(alpha2(h))))^(1/5); falls back
// to Silverman's bandwidth if the pilot functionals degenerate.
double sheather_jones_bandwidth(std::span<const double> x, double fallback) {
    const auto n = static_cast<double>(x.size());
    const double scale = silverman_scale(x);
    if (scale <= 0.0) return fallback;
    const double a = 0.920 * scale * std::pow(n, -1.0 / 7.0);
    const double b = 0.912 * scale * std::pow(n, -1.0 / 9.0);
    const double sd = density_functional(x, a, phi4, phi4(0.0)) / std::pow(a, 5);
    const double td = -density_functional(x, b, phi6, phi6(0.0)) / std::pow(b, 7);
    if (!(sd > 0.0) || !(td > 0.0)) return fallback;
    const double rk = 1.0 / (2.0 * std::sqrt(std::numbers::pi));
    auto equation = [&](double h) {
        const double alpha2 = 1.357 * std::pow(sd / td, 1.0 / 7.0) * std::pow(h, 5.0 / 7.0);
        const double s = density_functional(x, alpha2, phi4, phi4(0.0)) / std::pow(alpha2, 5);
        if (!(s > 0.0)) return -h;
        return std::pow(rk / (n * s), 0.2) - h;
    };
    double lo = fallback / 20.0;
    double hi = fallback * 2.0;
    int expansions = 0;
    while (equation(hi) > 0.0 && expansions++ < 20) hi *= 2.0;
    if (equation(lo) < 0.0 || equation(hi) > 0.0) return fallback;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (equation(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

KDEModel fit_kde(std::span<const double> samples, BandwidthRule rule, int grid_max) {
    if (samples.size() < 2) {
        throw InsufficientData("kernel density estimate needs at least 2 samples");
    }
    if (!num::all_finite(samples)) throw DataError("non-finite sample");

    KDEModel model;
    model.samples.assign(samples.begin(), samples.end());
    model.rule = rule;
    model.grid_max = grid_max;

    const auto n = static_cast<double>(samples.size());
    const double sigma = num::sample_stddev(samples);
    if (sigma <= 0.0) {
        model.bandwidth = kBandwidthFloor;
        model.degenerate = true;
        return model;
    }

    const double n_factor = std::pow(n, -0.2);
    const double silverman = 0.9 * silverman_scale(samples) * n_factor;
    switch (rule) {
        case BandwidthRule::Scott:
            model.bandwidth = sigma * n_factor;
            break;
        case BandwidthRule::Silverman:
            model.bandwidth = silverman;
            break;
        case BandwidthRule::SheatherJones:
            model.bandwidth = sheather_jones_bandwidth(samples, silverman);
            break;
    }
    if (!(model.bandwidth >= kBandwidthFloor)) model.bandwidth = kBandwidthFloor;
    return model;
}

std::vector<double> evaluate(const KDEModel& model) {
    std::vector<double> density(static_cast<std::size_t>(model.grid_max) + 1, 0.0);
    double total = 0.0;
    for (int g = 0; g <= model.grid_max; ++g) {
        double d = 0.0;
        for (double x : model.samples) {
            d += gauss((static_cast<double>(g) - x) / model.bandwidth);
        }
        density[static_cast<std::size_t>(g)] = d;
        total += d;
    }
    if (total <= 0.0) {
        // bandwidth so small every kernel underflows between grid points:
        // place each sample's mass on its nearest grid point
        for (double x : model.samples) {
            const double clamped = std::clamp(x, 0.0, static_cast<double>(model.grid_max));
            density[static_cast<std::size_t>(std::llround(clamped))] += 1.0;
            total += 1.0;
        }
    }
    for (double& d : density) d /= total;
    return density;
}

std::vector<double> smooth_to_grid(std::span<const double> samples, BandwidthRule rule,
                                   int grid_max) {
    return evaluate(fit_kde(samples, rule, grid_max));
}

}  // namespace qh::density
