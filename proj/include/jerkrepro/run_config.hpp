#pragma once

// Declarative run configuration: one flat JSON object, all keys optional,
// unknown keys rejected.
//
//   { "a": 2.03, "sign": "minus", "time_scale_s": 0.001,
//     "method": "rk4", "t_start": 0, "t_end": 100, "h": 0.001,
//     "rel_tol": 1e-9, "abs_tol": 1e-12, "ic": [0, 0, -1], "points": 4700,
//     "signal": "xdd",
//     "windows": 10, "threshold": 1.0, "nrmse_variant": "simulated-mean",
//     "grid_points": 4700 }

#include "jerkrepro/integrate.hpp"
#include "jerkrepro/jerk.hpp"
#include "jerkrepro/metrics.hpp"

#include <cstddef>
#include <string>
#include <string_view>

namespace jerkrepro {

struct MetricOptions {
    std::size_t n_windows = 10;
    double threshold = 1.0;
    NrmseVariant variant = NrmseVariant::SimulatedMean;
    std::size_t grid_points = 4700;
};

struct RunConfig {
    JerkParams params;
    IntegratorConfig integrator;
    MetricOptions metrics;
    /// State component written by `simulate`.
    StateComponent signal = StateComponent::Xdd;
};

/// Checks every nested invariant; throws DomainError / ConfigError.
void validate(const RunConfig& config);

/// Strict parse over the defaults. Throws ConfigError on malformed JSON,
/// unknown keys or wrongly typed values.
RunConfig run_config_from_json(std::string_view text, RunConfig base = {});

std::string to_json(const RunConfig& config);

}  // namespace jerkrepro
