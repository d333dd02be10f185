#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "actuation/config.hpp"

namespace actuation {

/// A documented figure-replication setup.
struct Preset {
    std::string id;
    std::string description;
    ParsedConfig config;
    int emit_samples = 0;            ///< per-agent snapshot interval for single runs
    bool cell_trajectories = false;  ///< sweeps: also write one trajectory CSV per cell
};

std::vector<std::string> preset_ids();

/// Throws ConfigError (key "figure") for unknown ids.
Preset make_preset(std::string_view id);

/// Evenly spaced values lo, lo + step, ..., hi (inclusive, rounded to the step).
std::vector<double> linspace_step(double lo, double hi, double step);

}  // namespace actuation
