#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "actuation/config.hpp"
#include "actuation/output.hpp"

namespace actuation {

struct CommandOptions {
    std::filesystem::path out_dir = ".";
    std::optional<std::uint64_t> seed;  ///< overrides the config's seed
    std::optional<int> emit_samples;    ///< per-agent snapshots every k generations
    std::optional<int> replicates;      ///< overrides a sweep's replicate count
    bool cell_trajectories = false;     ///< sweeps: one trajectory CSV per cell and replicate
};

/// trajectory.csv (+ samples.csv when requested) and manifest.json.
RunManifest cmd_run(ScenarioConfig config, const CommandOptions& options);

/// sweep.csv, heatmap.svg and manifest.json.
RunManifest cmd_sweep(SweepSpec spec, const CommandOptions& options);

/// Runs a named preset through cmd_run or cmd_sweep.
RunManifest cmd_replicate(std::string_view figure_id, const CommandOptions& options);

}  // namespace actuation
