#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "actuation/learner.hpp"
#include "actuation/population.hpp"
#include "actuation/rng.hpp"
#include "actuation/scenarios.hpp"

namespace actuation {

struct GroupStats {
    double mean = 0.0;
    double sd = 0.0;  ///< sample standard deviation (n - 1)
    double q05 = 0.0;
    double q95 = 0.0;
    std::size_t count = 0;

    friend bool operator==(const GroupStats&, const GroupStats&) = default;
};

GroupStats group_stats(std::span<const double> values);

struct GenerationSummary {
    int generation = 0;
    GroupStats overall;
    GroupStats group_a;                 ///< equals `overall` for single-group runs
    std::optional<GroupStats> group_b;  ///< two-group runs only

    friend bool operator==(const GenerationSummary&, const GenerationSummary&) = default;
};

GenerationSummary summarize(const PopulationState& pop);

/// One F1 token: teacher.c - lambda + sigma_a * z.
double produce_token(const Agent& teacher, double lambda, double sigma_a, NormalSource& noise);

/// Uniform draw (with replacement) from the learner's own group, or with
/// probability `cross_prob` from the other group. Single-group populations
/// draw uniformly from everyone and never consult `contact`.
const Agent& sample_teacher(const PopulationState& pop, Group learner_group, double cross_prob, CounterRng& contact,
                            CounterRng& teacher);

/// Everything a generation step needs that does not change between steps.
class GenerationKernel {
public:
    explicit GenerationKernel(const ScenarioConfig& config);

    const ScenarioConfig& config() const noexcept { return config_; }
    const MapEstimator& estimator() const noexcept { return estimator_; }
    const TokenWeightRule& weight_rule() const noexcept { return rule_; }

private:
    ScenarioConfig config_;
    MapEstimator estimator_;
    TokenWeightRule rule_;
};

/// The c learned by the agent in slot `index_in_group` of `learner_group`
/// in generation pop.generation + 1. `scratch` is reused token storage.
double learn_one(const PopulationState& pop, Group learner_group, std::size_t index_in_group,
                 const GenerationKernel& kernel, std::vector<Token>& scratch);

/// Next generation, learners computed concurrently (OpenMP).
PopulationState step_generation(const PopulationState& pop, const GenerationKernel& kernel);
PopulationState step_generation(const PopulationState& pop, const ScenarioConfig& config);

/// Reference implementation: same result, one learner at a time.
PopulationState step_generation_serial(const PopulationState& pop, const GenerationKernel& kernel);

/// True when |mean(t) - mean(t - window)| < delta for the whole population.
/// `history[k]` must be generation k.
bool stable_at(std::span<const GenerationSummary> history, std::size_t t, int window, double delta) noexcept;

struct TrajectoryOptions {
    int emit_samples_every = 0;  ///< 0 = no per-agent snapshots
    bool parallel = true;
};

struct Trajectory {
    std::vector<GenerationSummary> summaries;  ///< generation 0 .. last
    std::vector<PopulationState> samples;      ///< every k-th generation, when requested
    std::optional<int> converged_at;

    const GenerationSummary& final() const { return summaries.back(); }
};

/// Deterministic in (config, seed). Runs config.T generations, or stops
/// early under config.stable.
Trajectory run_trajectory(const ScenarioConfig& config, const TrajectoryOptions& options = {});

}  // namespace actuation
