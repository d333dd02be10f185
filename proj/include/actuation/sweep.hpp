#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "actuation/engine.hpp"
#include "actuation/scenarios.hpp"

namespace actuation {

struct SweepAxis {
    std::string name;  ///< a ScenarioConfig parameter, see sweepable_parameters()
    std::vector<double> values;

    friend bool operator==(const SweepAxis&, const SweepAxis&) = default;
};

struct SweepSpec {
    ScenarioConfig base;
    std::vector<SweepAxis> axes;  ///< one or two
    int T_max = 2500;
    int replicates = 1;
    int window = 50;
    double delta = 0.5;
    bool stop_when_stable = true;  ///< false: every cell runs exactly T_max generations

    void validate() const;
    std::size_t cell_count() const noexcept;

    friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

/// Names accepted as sweep axes.
std::span<const std::string_view> sweepable_parameters() noexcept;

/// Set a named parameter; integral parameters must receive integral values.
void set_parameter(ScenarioConfig& config, std::string_view name, double value);
double get_parameter(const ScenarioConfig& config, std::string_view name);

struct ReplicateOutcome {
    std::uint64_t seed = 0;
    double final_mean = 0.0;
    double final_mean_a = 0.0;
    std::optional<double> final_mean_b;
    std::optional<int> converged_at;
    int generations = 0;

    friend bool operator==(const ReplicateOutcome&, const ReplicateOutcome&) = default;
};

struct SweepCell {
    std::vector<double> values;  ///< one per axis
    std::vector<ReplicateOutcome> replicates;
    double median_final_mean = 0.0;
    double dispersion = 0.0;  ///< SD of final_mean across replicates (0 for one)

    friend bool operator==(const SweepCell&, const SweepCell&) = default;
};

/// Cells in row-major order over the axes (last axis fastest).
struct SweepResult {
    std::vector<SweepAxis> axes;
    std::vector<SweepCell> cells;
    /// Per job (cell * replicates + replicate), when requested.
    std::vector<Trajectory> trajectories;

    std::size_t index(std::span<const std::size_t> coords) const;
    std::vector<std::size_t> coords(std::size_t index) const;
};

/// Seed of replicate r; shared by all cells so neighbouring cells use common
/// random numbers.
std::uint64_t replicate_seed(std::uint64_t base_seed, int replicate) noexcept;

/// Fully resolved configuration of one cell and replicate.
ScenarioConfig cell_config(const SweepSpec& spec, std::size_t cell, int replicate);

/// Earliest t >= window with |mean(t) - mean(t - window)| < delta.
std::optional<int> detect_stable(std::span<const GenerationSummary> trajectory, int window, double delta);

struct SweepOptions {
    /// Permutation of job indices; changes the schedule, never the result.
    std::span<const std::size_t> order;
    bool keep_trajectories = false;
};

/// Runs every (cell, replicate) to its stable state or T_max. Jobs run
/// concurrently and results are stored by job index.
SweepResult run_sweep(const SweepSpec& spec, const SweepOptions& options = {});

/// Adjacent cell pairs along `axis` whose median final means differ by
/// more than `jump`.
std::vector<std::pair<std::size_t, std::size_t>> find_bifurcation(const SweepResult& grid, std::string_view axis,
                                                                  double jump);

}  // namespace actuation
