#include "actuation/engine.hpp"

#include <algorithm>
#include <cmath>

#include <omp.h>

namespace actuation {

namespace {

double quantile_sorted(std::span<const double> sorted, double p) {
    const double h = static_cast<double>(sorted.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

void assign_generation_weights(PopulationState& pop, const ScenarioConfig& config) {
    if (config.model != ModelKind::individual_weight) return;
    std::vector<double> c(pop.size());
    for (std::size_t i = 0; i < pop.size(); ++i) c[i] = pop.agents[i].c;
    CounterRng rng = generation_stream(config.seed, static_cast<std::uint64_t>(pop.generation), Stream::weights);
    const std::vector<double> w = assign_individual_weights(c, config.rho, config.w_max, pop.generation, config.lex, rng);
    for (std::size_t i = 0; i < pop.size(); ++i) pop.agents[i].w = w[i];
}

PopulationState next_shell(const PopulationState& pop) {
    PopulationState next;
    next.generation = pop.generation + 1;
    next.a_count = pop.a_count;
    next.two_groups = pop.two_groups;
    next.agents.resize(pop.size());
    return next;
}

}  // namespace

GroupStats group_stats(std::span<const double> values) {
    GroupStats s;
    s.count = values.size();
    if (values.empty()) return s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double sq = 0.0;
        for (double v : values) sq += (v - s.mean) * (v - s.mean);
        s.sd = std::sqrt(sq / static_cast<double>(values.size() - 1));
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    s.q05 = quantile_sorted(sorted, 0.05);
    s.q95 = quantile_sorted(sorted, 0.95);
    return s;
}

GenerationSummary summarize(const PopulationState& pop) {
    GenerationSummary g;
    g.generation = pop.generation;
    std::vector<double> c(pop.size());
    for (std::size_t i = 0; i < pop.size(); ++i) c[i] = pop.agents[i].c;
    g.overall = group_stats(c);
    if (pop.two_groups) {
        const std::span<const double> all(c);
        g.group_a = group_stats(all.subspan(0, pop.a_count));
        g.group_b = group_stats(all.subspan(pop.a_count));
    } else {
        g.group_a = g.overall;
    }
    return g;
}

double produce_token(const Agent& teacher, double lambda, double sigma_a, NormalSource& noise) {
    return (teacher.c - lambda) + sigma_a * noise();
}

const Agent& sample_teacher(const PopulationState& pop, Group learner_group, double cross_prob, CounterRng& contact,
                            CounterRng& teacher) {
    if (!pop.two_groups) return pop.agents[uniform_index(teacher, pop.size())];
    const bool cross = contact.uniform01() < cross_prob;
    const Group source = cross ? other(learner_group) : learner_group;
    const std::span<const Agent> members = pop.group(source);
    if (members.empty())
        throw ConfigError(learner_group == Group::A ? "bProb" : "aProb", "teacher group is empty");
    return members[uniform_index(teacher, members.size())];
}

GenerationKernel::GenerationKernel(const ScenarioConfig& config)
    : config_(config), estimator_(config.prior, config.lex), rule_(config) {
    config_.validate();
}

double learn_one(const PopulationState& pop, Group learner_group, std::size_t index_in_group,
                 const GenerationKernel& kernel, std::vector<Token>& scratch) {
    const ScenarioConfig& cfg = kernel.config();
    const auto generation = static_cast<std::uint64_t>(pop.generation + 1);
    CounterRng contact = agent_stream(cfg.seed, learner_group, generation, index_in_group, Stream::contact);
    CounterRng teacher_rng = agent_stream(cfg.seed, learner_group, generation, index_in_group, Stream::teacher);
    NormalSource noise(agent_stream(cfg.seed, learner_group, generation, index_in_group, Stream::production));
    const double cross_prob = cfg.cross_prob(learner_group);
    const TokenWeightRule& rule = kernel.weight_rule();

    scratch.resize(static_cast<std::size_t>(cfg.n));
    for (Token& token : scratch) {
        const Agent& teacher = sample_teacher(pop, learner_group, cross_prob, contact, teacher_rng);
        token.y = produce_token(teacher, cfg.lambda, cfg.lex.sigma_a, noise);
        token.w = rule(token.y, teacher, learner_group);
    }
    const TokenBatch batch{scratch, cfg.lex.sigma_a};
    return kernel.estimator().estimate(summarize(batch), batch.sigma);
}

PopulationState step_generation(const PopulationState& pop, const GenerationKernel& kernel) {
    PopulationState next = next_shell(pop);
    const auto m = static_cast<std::ptrdiff_t>(pop.size());
#pragma omp parallel
    {
        std::vector<Token> scratch;
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < m; ++i) {
            const auto idx = static_cast<std::size_t>(i);
            const Group g = pop.group_of(idx);
            next.agents[idx] = Agent{learn_one(pop, g, pop.index_in_group(idx), kernel, scratch), g, 1.0};
        }
    }
    assign_generation_weights(next, kernel.config());
    return next;
}

PopulationState step_generation(const PopulationState& pop, const ScenarioConfig& config) {
    return step_generation(pop, GenerationKernel(config));
}

PopulationState step_generation_serial(const PopulationState& pop, const GenerationKernel& kernel) {
    PopulationState next = next_shell(pop);
    std::vector<Token> scratch;
    for (std::size_t i = 0; i < pop.size(); ++i) {
        const Group g = pop.group_of(i);
        next.agents[i] = Agent{learn_one(pop, g, pop.index_in_group(i), kernel, scratch), g, 1.0};
    }
    assign_generation_weights(next, kernel.config());
    return next;
}

bool stable_at(std::span<const GenerationSummary> history, std::size_t t, int window, double delta) noexcept {
    const auto w = static_cast<std::size_t>(window);
    if (window < 1 || t < w || t >= history.size()) return false;
    return std::abs(history[t].overall.mean - history[t - w].overall.mean) < delta;
}

Trajectory run_trajectory(const ScenarioConfig& config, const TrajectoryOptions& options) {
    const GenerationKernel kernel(config);
    Trajectory out;
    PopulationState pop = init_population(config);
    out.summaries.reserve(static_cast<std::size_t>(config.T) + 1);
    out.summaries.push_back(summarize(pop));
    const int every = options.emit_samples_every;
    if (every > 0) out.samples.push_back(pop);

    for (int t = 1; t <= config.T; ++t) {
        pop = options.parallel ? step_generation(pop, kernel) : step_generation_serial(pop, kernel);
        out.summaries.push_back(summarize(pop));
        if (every > 0 && t % every == 0) out.samples.push_back(pop);
        if (config.stable.enabled &&
            stable_at(out.summaries, static_cast<std::size_t>(t), config.stable.window, config.stable.delta)) {
            out.converged_at = t;
            break;
        }
    }
    return out;
}

}  // namespace actuation
