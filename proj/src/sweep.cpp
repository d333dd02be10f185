#include "actuation/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include <omp.h>

namespace actuation {

namespace {

constexpr std::string_view kParameters[] = {
    "lambda", "a",       "tau",     "n",         "M",          "T",          "aProb",      "bProb",
    "w",      "aWeight", "bWeight", "rho",       "w_max",      "init_a.mean", "init_a.sd", "init_b.mean",
    "init_b.sd"};

template <class Config>
auto double_field(Config& c, std::string_view name) -> decltype(&c.lambda) {
    if (name == "lambda") return &c.lambda;
    if (name == "a") return &c.prior.a;
    if (name == "tau") return &c.prior.tau;
    if (name == "aProb") return &c.a_prob;
    if (name == "bProb") return &c.b_prob;
    if (name == "w") return &c.w;
    if (name == "aWeight") return &c.a_weight;
    if (name == "bWeight") return &c.b_weight;
    if (name == "rho") return &c.rho;
    if (name == "w_max") return &c.w_max;
    if (name == "init_a.mean") return &c.init_a.mean;
    if (name == "init_a.sd") return &c.init_a.sd;
    if (name == "init_b.mean") return &c.init_b.mean;
    if (name == "init_b.sd") return &c.init_b.sd;
    return nullptr;
}

template <class Config>
auto int_field(Config& c, std::string_view name) -> decltype(&c.n) {
    if (name == "n") return &c.n;
    if (name == "M") return &c.M;
    if (name == "T") return &c.T;
    return nullptr;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t k = v.size() / 2;
    return v.size() % 2 == 1 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

}  // namespace

std::span<const std::string_view> sweepable_parameters() noexcept { return kParameters; }

void set_parameter(ScenarioConfig& config, std::string_view name, double value) {
    if (double* f = double_field(config, name)) {
        *f = value;
        return;
    }
    if (int* f = int_field(config, name)) {
        if (!std::isfinite(value) || value != std::floor(value))
            throw ConfigError(std::string(name), "must be an integer");
        *f = static_cast<int>(value);
        return;
    }
    throw ConfigError(std::string(name), "not a sweepable parameter");
}

double get_parameter(const ScenarioConfig& config, std::string_view name) {
    if (const double* f = double_field(config, name)) return *f;
    if (const int* f = int_field(config, name)) return *f;
    throw ConfigError(std::string(name), "not a sweepable parameter");
}

std::size_t SweepSpec::cell_count() const noexcept {
    std::size_t n = 1;
    for (const SweepAxis& a : axes) n *= a.values.size();
    return axes.empty() ? 0 : n;
}

void SweepSpec::validate() const {
    if (axes.empty() || axes.size() > 2) throw ConfigError("axes", "need one or two axes");
    for (std::size_t i = 0; i < axes.size(); ++i) {
        const std::string key = "axes[" + std::to_string(i) + "]";
        const auto& params = sweepable_parameters();
        if (std::find(params.begin(), params.end(), axes[i].name) == params.end())
            throw ConfigError(key + ".name", "'" + axes[i].name + "' is not a sweepable parameter");
        if (axes[i].values.empty()) throw ConfigError(key + ".values", "must not be empty");
        for (std::size_t j = 0; j < i; ++j)
            if (axes[j].name == axes[i].name) throw ConfigError(key + ".name", "duplicate axis");
    }
    if (T_max < 1) throw ConfigError("T_max", "must be >= 1");
    if (replicates < 1) throw ConfigError("replicates", "must be >= 1");
    if (window < 1) throw ConfigError("window", "must be >= 1");
    if (!(delta > 0.0)) throw ConfigError("delta", "must be > 0");

    const SweepResult shape{axes, {}, {}};
    for (std::size_t cell = 0; cell < cell_count(); ++cell) {
        try {
            cell_config(*this, cell, 0).validate();
        } catch (const ConfigError& e) {
            std::string where;
            const auto coords = shape.coords(cell);
            for (std::size_t k = 0; k < axes.size(); ++k) {
                if (k) where += ", ";
                where += axes[k].name + "=" + std::to_string(axes[k].values[coords[k]]);
            }
            throw ConfigError(e.key(), std::string("cell [") + where + "]: " + e.what());
        }
    }
}

std::size_t SweepResult::index(std::span<const std::size_t> c) const {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < axes.size(); ++k) idx = idx * axes[k].values.size() + c[k];
    return idx;
}

std::vector<std::size_t> SweepResult::coords(std::size_t index) const {
    std::vector<std::size_t> c(axes.size());
    for (std::size_t k = axes.size(); k-- > 0;) {
        c[k] = index % axes[k].values.size();
        index /= axes[k].values.size();
    }
    return c;
}

std::uint64_t replicate_seed(std::uint64_t base_seed, int replicate) noexcept {
    if (replicate == 0) return base_seed;
    return derive_key(base_seed, {static_cast<std::uint64_t>(Stream::replicate), static_cast<std::uint64_t>(replicate)});
}

ScenarioConfig cell_config(const SweepSpec& spec, std::size_t cell, int replicate) {
    ScenarioConfig cfg = spec.base;
    const SweepResult shape{spec.axes, {}, {}};
    const auto coords = shape.coords(cell);
    for (std::size_t k = 0; k < spec.axes.size(); ++k) set_parameter(cfg, spec.axes[k].name, spec.axes[k].values[coords[k]]);
    cfg.T = spec.T_max;
    cfg.stable = StableRule{spec.stop_when_stable, spec.window, spec.delta};
    cfg.seed = replicate_seed(spec.base.seed, replicate);
    return cfg;
}

std::optional<int> detect_stable(std::span<const GenerationSummary> trajectory, int window, double delta) {
    if (window < 1) throw std::invalid_argument("detect_stable: window must be >= 1");
    for (std::size_t t = static_cast<std::size_t>(window); t < trajectory.size(); ++t)
        if (stable_at(trajectory, t, window, delta)) return static_cast<int>(t);
    return std::nullopt;
}

SweepResult run_sweep(const SweepSpec& spec, const SweepOptions& options) {
    const std::span<const std::size_t> order = options.order;
    spec.validate();
    const std::size_t cells = spec.cell_count();
    const auto reps = static_cast<std::size_t>(spec.replicates);
    const std::size_t jobs = cells * reps;
    if (!order.empty() && order.size() != jobs) throw std::invalid_argument("run_sweep: order must cover every job");

    std::vector<ReplicateOutcome> outcomes(jobs);
    std::vector<Trajectory> trajectories(options.keep_trajectories ? jobs : 0);
    const TrajectoryOptions serial{0, false};
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(jobs); ++j) {
        const std::size_t job = order.empty() ? static_cast<std::size_t>(j) : order[static_cast<std::size_t>(j)];
        const ScenarioConfig cfg = cell_config(spec, job / reps, static_cast<int>(job % reps));
        const Trajectory tr = run_trajectory(cfg, serial);
        ReplicateOutcome& o = outcomes[job];
        o.seed = cfg.seed;
        o.final_mean = tr.final().overall.mean;
        o.final_mean_a = tr.final().group_a.mean;
        if (tr.final().group_b) o.final_mean_b = tr.final().group_b->mean;
        o.converged_at = tr.converged_at;
        o.generations = tr.final().generation;
        if (options.keep_trajectories) trajectories[job] = tr;
    }

    SweepResult result{spec.axes, std::vector<SweepCell>(cells), std::move(trajectories)};
    for (std::size_t cell = 0; cell < cells; ++cell) {
        SweepCell& sc = result.cells[cell];
        const auto coords = result.coords(cell);
        for (std::size_t k = 0; k < spec.axes.size(); ++k) sc.values.push_back(spec.axes[k].values[coords[k]]);
        std::vector<double> finals;
        for (std::size_t r = 0; r < reps; ++r) {
            sc.replicates.push_back(outcomes[cell * reps + r]);
            finals.push_back(sc.replicates.back().final_mean);
        }
        sc.median_final_mean = median(finals);
        if (finals.size() > 1) {
            const double mean = std::accumulate(finals.begin(), finals.end(), 0.0) / static_cast<double>(finals.size());
            double sq = 0.0;
            for (double f : finals) sq += (f - mean) * (f - mean);
            sc.dispersion = std::sqrt(sq / static_cast<double>(finals.size() - 1));
        }
    }
    return result;
}

std::vector<std::pair<std::size_t, std::size_t>> find_bifurcation(const SweepResult& grid, std::string_view axis,
                                                                  double jump) {
    std::size_t k = grid.axes.size();
    for (std::size_t i = 0; i < grid.axes.size(); ++i)
        if (grid.axes[i].name == axis) k = i;
    if (k == grid.axes.size()) throw std::invalid_argument("find_bifurcation: no axis named " + std::string(axis));
    std::size_t expected = 1;
    for (const SweepAxis& a : grid.axes) expected *= a.values.size();
    if (grid.cells.size() != expected) throw std::invalid_argument("find_bifurcation: incomplete grid");

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t cell = 0; cell < grid.cells.size(); ++cell) {
        auto c = grid.coords(cell);
        if (c[k] + 1 >= grid.axes[k].values.size()) continue;
        ++c[k];
        const std::size_t next = grid.index(c);
        if (std::abs(grid.cells[next].median_final_mean - grid.cells[cell].median_final_mean) > jump)
            pairs.emplace_back(cell, next);
    }
    return pairs;
}

}  // namespace actuation
