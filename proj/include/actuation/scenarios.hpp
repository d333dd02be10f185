#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "actuation/core.hpp"
#include "actuation/population.hpp"
#include "actuation/rng.hpp"

namespace actuation {

enum class ModelKind : std::uint8_t {
    bias = 0,               ///< M0: single population, production + categoricity bias
    contact = 1,            ///< M1: two groups learning across groups with aProb/bProb
    variant_weight = 2,     ///< M2: tokens weighted by how coarticulated they are
    group_weight = 3,       ///< M3: cross-group tokens scaled by aWeight/bWeight
    individual_weight = 4,  ///< M4: tokens carry their teacher's social weight
};

std::string_view to_string(ModelKind m) noexcept;
ModelKind model_kind_from_string(std::string_view name);
ModelKind model_kind_from_index(int index);

constexpr bool is_two_group(ModelKind m) noexcept {
    return m == ModelKind::contact || m == ModelKind::group_weight;
}

struct InitialDistribution {
    double mean = 720.0;
    double sd = 10.0;

    friend bool operator==(const InitialDistribution&, const InitialDistribution&) = default;
};

/// Stop a trajectory once |mean(t) - mean(t - window)| < delta.
struct StableRule {
    bool enabled = false;
    int window = 50;
    double delta = 0.5;

    friend bool operator==(const StableRule&, const StableRule&) = default;
};

struct ScenarioConfig {
    ModelKind model = ModelKind::bias;
    LexiconParams lex;
    PriorSpec prior;
    double lambda = 0.0;
    int n = 100;
    int M = 500;
    int T = 100;
    std::uint64_t seed = 1;
    InitialDistribution init_a{720.0, 10.0};
    InitialDistribution init_b{540.0, 10.0};
    double a_prob = 0.0;
    double b_prob = 0.0;
    double w = 1.0;
    double a_weight = 1.0;
    double b_weight = 1.0;
    double rho = 0.0;
    double w_max = 1.0;
    StableRule stable;

    /// Throws ConfigError naming the first offending key.
    void validate() const;

    bool two_groups() const noexcept { return is_two_group(model); }
    /// Probability that a learner of group g takes a token from the other group.
    double cross_prob(Group g) const noexcept { return g == Group::A ? b_prob : a_prob; }

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Model 2: 1 at mu_a, w at mu_i, linear in between, clamped outside.
double variant_weight(double y, double w, const LexiconParams& lex) noexcept;

/// Model 3: 1 for own-group tokens; aWeight for A tokens heard by B
/// learners; bWeight for B tokens heard by A learners.
double group_weight(Group teacher, Group learner, double a_weight, double b_weight) noexcept;

/// Model 4 individual weights for a generation of teachers.
///
/// After generation 25 a Gaussian copula ties weight to coarticulation rank:
/// v = rank(mu_a - c) / M (mid-ranks), z = Phi^-1(v),
/// z' = rho z + sqrt(1 - rho^2) eps, w = 1 + (w_max - 1) Phi(z').
/// Up to generation 25 the weight is the average of the linear coarticulation
/// weight and a Uniform[1, w_max] draw.
std::vector<double> assign_individual_weights(std::span<const double> c_values, double rho, double w_max,
                                              int generation, const LexiconParams& lex, CounterRng& rng);

/// Per-token social weight for a configured model.
class TokenWeightRule {
public:
    explicit TokenWeightRule(const ScenarioConfig& config);

    double operator()(double y, const Agent& teacher, Group learner) const noexcept {
        switch (model_) {
            case ModelKind::variant_weight: return variant_weight(y, w_, lex_);
            case ModelKind::group_weight: return group_weight(teacher.group, learner, a_weight_, b_weight_);
            case ModelKind::individual_weight: return teacher.w;
            default: return 1.0;
        }
    }

    ModelKind model() const noexcept { return model_; }

private:
    ModelKind model_;
    LexiconParams lex_;
    double w_;
    double a_weight_;
    double b_weight_;
};

TokenWeightRule build_token_weight_rule(const ScenarioConfig& config);

/// Generation-0 population: c drawn per group from its initial normal and
/// clamped to the search domain; two-group models put the first M/2 agents
/// in group A. Model 4 also assigns generation-0 weights.
PopulationState init_population(const ScenarioConfig& config);

}  // namespace actuation
