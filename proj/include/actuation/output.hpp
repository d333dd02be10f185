#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "actuation/engine.hpp"
#include "actuation/sweep.hpp"

namespace actuation {

/// Writes `content` to a sibling temporary file and renames it into place,
/// so readers never observe a partially written file.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// generation,group,mean_c,sd_c,q05,q95. Single-group runs emit one row per
/// generation with group "A"; two-group runs emit rows A, B and all.
std::string trajectory_csv(const Trajectory& trajectory);

/// generation,agent,group,c,w for every stored snapshot.
std::string samples_csv(const Trajectory& trajectory);

/// One row per cell and replicate: axis columns, replicate,
/// final_mean_c_overall, final_mean_c_A, final_mean_c_B, converged_at.
std::string sweep_csv(const SweepResult& result);

/// Heatmap of each cell's median final mean c, colored over [lo, hi].
/// One-axis sweeps render as a single row.
std::string sweep_heatmap_svg(const SweepResult& result, double lo, double hi, const std::string& title);

/// Color for value v in [lo, hi]: red at lo, pale at the midpoint, dark blue at hi.
std::string heat_color(double v, double lo, double hi);

struct RunManifest {
    nlohmann::json config;  ///< validated config echo
    std::uint64_t seed = 0;
    std::string version = ACTUATION_VERSION;
    std::string command;
    std::string started_at;
    std::string finished_at;
    std::vector<std::string> outputs;  ///< file names relative to the output directory

    nlohmann::json to_json() const;
};

/// UTC timestamp in ISO 8601 form.
std::string utc_timestamp();

}  // namespace actuation
