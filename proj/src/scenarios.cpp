#include "actuation/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include <boost/math/distributions/normal.hpp>

namespace actuation {

namespace {

constexpr std::string_view kModelNames[] = {"M0_bias", "M1_contact", "M2_variant_weight", "M3_group_weight",
                                            "M4_individual_weight"};

void require(bool ok, const char* key, const char* message) {
    if (!ok) throw ConfigError(key, message);
}

bool in_unit(double x) { return x >= 0.0 && x <= 1.0; }

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Mid-ranks (1-based) of `scores`; ties share their average rank.
std::vector<double> mid_ranks(std::span<const double> scores) {
    const std::size_t m = scores.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return scores[i] < scores[j]; });
    std::vector<double> ranks(m);
    for (std::size_t i = 0; i < m;) {
        std::size_t j = i;
        while (j + 1 < m && scores[order[j + 1]] == scores[order[i]]) ++j;
        const double r = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

std::string_view to_string(ModelKind m) noexcept { return kModelNames[static_cast<int>(m)]; }

ModelKind model_kind_from_string(std::string_view name) {
    for (int i = 0; i < 5; ++i)
        if (name == kModelNames[i]) return static_cast<ModelKind>(i);
    throw ConfigError("model", "unknown model kind '" + std::string(name) + "'");
}

ModelKind model_kind_from_index(int index) {
    if (index < 0 || index > 4) throw ConfigError("model", "unknown model kind " + std::to_string(index));
    return static_cast<ModelKind>(index);
}

void ScenarioConfig::validate() const {
    if (static_cast<int>(model) > 4) throw ConfigError("model", "unknown model kind");
    lex.validate();
    prior.validate();
    require(std::isfinite(lambda) && lambda >= 0.0, "lambda", "must be >= 0");
    require(n >= 1, "n", "must be >= 1");
    require(M >= 1, "M", "must be >= 1");
    require(!two_groups() || M >= 2, "M", "two-group models need M >= 2");
    require(T >= 0, "T", "must be >= 0");
    require(std::isfinite(init_a.mean), "init_a.mean", "must be finite");
    require(init_a.sd > 0.0 && std::isfinite(init_a.sd), "init_a.sd", "must be > 0");
    require(std::isfinite(init_b.mean), "init_b.mean", "must be finite");
    require(init_b.sd > 0.0 && std::isfinite(init_b.sd), "init_b.sd", "must be > 0");
    require(in_unit(a_prob), "aProb", "must be in [0, 1]");
    require(in_unit(b_prob), "bProb", "must be in [0, 1]");
    require(std::isfinite(w) && w >= 1.0, "w", "must be >= 1");
    require(in_unit(a_weight), "aWeight", "must be in [0, 1]");
    require(in_unit(b_weight), "bWeight", "must be in [0, 1]");
    require(in_unit(rho), "rho", "must be in [0, 1]");
    require(std::isfinite(w_max) && w_max >= 1.0, "w_max", "must be >= 1");
    require(stable.window >= 1, "stable.window", "must be >= 1");
    require(stable.delta > 0.0 && std::isfinite(stable.delta), "stable.delta", "must be > 0");
}

double variant_weight(double y, double w, const LexiconParams& lex) noexcept {
    const double coart = std::clamp((lex.mu_a - y) / lex.width(), 0.0, 1.0);
    return 1.0 + (w - 1.0) * coart;
}

double group_weight(Group teacher, Group learner, double a_weight, double b_weight) noexcept {
    if (teacher == learner) return 1.0;
    return teacher == Group::A ? a_weight : b_weight;
}

std::vector<double> assign_individual_weights(std::span<const double> c_values, double rho, double w_max,
                                              int generation, const LexiconParams& lex, CounterRng& rng) {
    const std::size_t m = c_values.size();
    std::vector<double> weights(m, 1.0);
    if (m == 0) return weights;
    const double span = w_max - 1.0;

    if (generation <= 25) {
        for (std::size_t i = 0; i < m; ++i) {
            const double linear = 1.0 + span * std::clamp((lex.mu_a - c_values[i]) / lex.width(), 0.0, 1.0);
            const double uniform = 1.0 + span * rng.uniform01();
            weights[i] = 0.5 * linear + 0.5 * uniform;
        }
        return weights;
    }

    std::vector<double> scores(m);
    for (std::size_t i = 0; i < m; ++i) scores[i] = lex.mu_a - c_values[i];
    const std::vector<double> ranks = mid_ranks(scores);
    const boost::math::normal_distribution<double> standard;
    const double noise_scale = std::sqrt(std::max(0.0, 1.0 - rho * rho));
    std::normal_distribution<double> noise;
    for (std::size_t i = 0; i < m; ++i) {
        const double v = (ranks[i] - 0.5) / static_cast<double>(m);
        const double z = boost::math::quantile(standard, v);
        const double eps = noise(rng);
        weights[i] = 1.0 + span * std_normal_cdf(rho * z + noise_scale * eps);
    }
    return weights;
}

TokenWeightRule::TokenWeightRule(const ScenarioConfig& config)
    : model_(config.model),
      lex_(config.lex),
      w_(config.w),
      a_weight_(config.a_weight),
      b_weight_(config.b_weight) {
    if (static_cast<int>(model_) > 4) throw ConfigError("model", "unknown model kind");
}

TokenWeightRule build_token_weight_rule(const ScenarioConfig& config) { return TokenWeightRule(config); }

PopulationState init_population(const ScenarioConfig& config) {
    config.validate();
    const SearchDomain domain = search_domain(config.lex);
    PopulationState pop;
    pop.generation = 0;
    pop.two_groups = config.two_groups();
    const auto m = static_cast<std::size_t>(config.M);
    pop.a_count = pop.two_groups ? m / 2 : m;
    pop.agents.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const Group g = pop.group_of(i);
        const InitialDistribution& init = g == Group::A ? config.init_a : config.init_b;
        CounterRng rng = agent_stream(config.seed, g, 0, pop.index_in_group(i), Stream::init);
        std::normal_distribution<double> dist(init.mean, init.sd);
        pop.agents[i] = Agent{domain.clamp(dist(rng)), g, 1.0};
    }
    if (config.model == ModelKind::individual_weight) {
        std::vector<double> c(m);
        for (std::size_t i = 0; i < m; ++i) c[i] = pop.agents[i].c;
        CounterRng rng = generation_stream(config.seed, 0, Stream::weights);
        const std::vector<double> w = assign_individual_weights(c, config.rho, config.w_max, 0, config.lex, rng);
        for (std::size_t i = 0; i < m; ++i) pop.agents[i].w = w[i];
    }
    return pop;
}

}  // namespace actuation
