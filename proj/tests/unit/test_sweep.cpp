#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "actuation/sweep.hpp"

using namespace actuation;

namespace {

std::vector<GenerationSummary> series(const std::vector<double>& means) {
    std::vector<GenerationSummary> out(means.size());
    for (std::size_t t = 0; t < means.size(); ++t) {
        out[t].generation = static_cast<int>(t);
        out[t].overall.mean = means[t];
    }
    return out;
}

SweepSpec small_spec() {
    SweepSpec spec;
    spec.base.M = 100;
    spec.base.prior.a = 0.02;
    spec.axes = {{"lambda", {0.0, 4.0}}, {"a", {0.02, 0.5}}};
    spec.T_max = 20;
    spec.window = 5;
    return spec;
}

SweepResult grid_of(const std::vector<double>& medians) {
    SweepResult r;
    r.axes = {{"lambda", std::vector<double>(medians.size())}};
    std::iota(r.axes[0].values.begin(), r.axes[0].values.end(), 0.0);
    for (double m : medians) {
        SweepCell c;
        c.median_final_mean = m;
        r.cells.push_back(c);
    }
    return r;
}

}  // namespace

TEST_CASE("detect_stable: constant, drifting and window edge cases") {
    CHECK(detect_stable(series(std::vector<double>(100, 700.0)), 50, 0.5) == 50);
    std::vector<double> drift(200);
    for (std::size_t t = 0; t < drift.size(); ++t) drift[t] = 720.0 - 0.01 * static_cast<double>(t);
    CHECK_FALSE(detect_stable(series(drift), 50, 0.5).has_value());
    CHECK_FALSE(detect_stable(series(std::vector<double>(10, 1.0)), 50, 0.5).has_value());
    CHECK_THROWS_AS(detect_stable(series(drift), 0, 0.5), std::invalid_argument);
}

TEST_CASE("detect_stable is monotone in delta") {
    std::vector<double> decay(600);
    for (std::size_t t = 0; t < decay.size(); ++t) decay[t] = 530.0 + 200.0 * std::exp(-0.03 * static_cast<double>(t));
    const auto trajectory = series(decay);
    int previous = 1 << 30;
    for (double delta : {0.01, 0.1, 0.5, 2.0, 10.0, 50.0}) {
        const auto t = detect_stable(trajectory, 20, delta);
        REQUIRE(t.has_value());
        CHECK(*t <= previous);
        previous = *t;
    }
}

TEST_CASE("sweep spec validation") {
    SweepSpec spec = small_spec();
    CHECK_NOTHROW(spec.validate());
    CHECK(spec.cell_count() == 4);
    spec.axes.clear();
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec = small_spec();
    spec.axes[0].name = "lamda";
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec = small_spec();
    spec.axes[1].values.clear();
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec = small_spec();
    spec.axes[0].values = {0.0, -1.0};
    try {
        spec.validate();
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.key() == "lambda");
        CHECK(std::string(e.what()).find("cell [") != std::string::npos);
    }
    spec = small_spec();
    spec.axes[0] = {"n", {10.5}};
    CHECK_THROWS_AS(spec.validate(), ConfigError);
}

TEST_CASE("parameter access by name") {
    ScenarioConfig cfg;
    for (std::string_view name : sweepable_parameters()) {
        const double v = name == "n" || name == "M" || name == "T" ? 7.0 : 0.25;
        set_parameter(cfg, name, v);
        CHECK(get_parameter(cfg, name) == v);
    }
    CHECK_THROWS_AS(set_parameter(cfg, "seed", 1.0), ConfigError);
}

TEST_CASE("a 1x1 sweep reduces to run_trajectory") {
    SweepSpec spec = small_spec();
    spec.axes = {{"lambda", {2.0}}};
    const SweepResult r = run_sweep(spec);
    REQUIRE(r.cells.size() == 1);
    ScenarioConfig cfg = spec.base;
    cfg.lambda = 2.0;
    cfg.T = spec.T_max;
    cfg.stable = {true, spec.window, spec.delta};
    const Trajectory t = run_trajectory(cfg);
    CHECK(r.cells[0].replicates[0].final_mean == t.final().overall.mean);
    CHECK(r.cells[0].replicates[0].converged_at == t.converged_at);
    CHECK(r.cells[0].median_final_mean == t.final().overall.mean);
}

TEST_CASE("cell order, coordinates and schedule independence") {
    SweepSpec spec = small_spec();
    spec.replicates = 2;
    const SweepResult forward = run_sweep(spec);
    REQUIRE(forward.cells.size() == 4);
    CHECK(forward.cells[1].values == std::vector<double>{0.0, 0.5});
    CHECK(forward.cells[2].values == std::vector<double>{4.0, 0.02});
    const std::vector<std::size_t> c{1, 1};
    CHECK(forward.index(c) == 3);
    CHECK(forward.coords(2) == std::vector<std::size_t>{1, 0});

    std::vector<std::size_t> order(8);
    std::iota(order.begin(), order.end(), 0);
    std::reverse(order.begin(), order.end());
    SweepOptions opts;
    opts.order = order;
    const SweepResult backward = run_sweep(spec, opts);
    CHECK(backward.cells == forward.cells);

    for (const SweepCell& cell : forward.cells) {
        CHECK(cell.replicates.size() == 2);
        CHECK(cell.replicates[0].seed != cell.replicates[1].seed);
        CHECK(cell.dispersion >= 0.0);
        for (const ReplicateOutcome& o : cell.replicates) {
            CHECK(o.final_mean >= 530.5);
            CHECK(o.final_mean <= 729.5);
        }
    }
}

TEST_CASE("stop_when_stable off runs every cell to T_max and keeps trajectories") {
    SweepSpec spec = small_spec();
    spec.stop_when_stable = false;
    SweepOptions opts;
    opts.keep_trajectories = true;
    const SweepResult r = run_sweep(spec, opts);
    CHECK(r.trajectories.size() == 4);
    for (const Trajectory& t : r.trajectories) CHECK(t.summaries.size() == 21);
    for (const SweepCell& cell : r.cells) CHECK_FALSE(cell.replicates[0].converged_at.has_value());
}

TEST_CASE("two-group sweeps report per-group means") {
    SweepSpec spec = small_spec();
    spec.base.model = ModelKind::contact;
    spec.axes = {{"aProb", {0.0, 0.1}}};
    const SweepResult r = run_sweep(spec);
    for (const SweepCell& cell : r.cells) {
        REQUIRE(cell.replicates[0].final_mean_b.has_value());
        CHECK(cell.replicates[0].final_mean ==
              doctest::Approx(0.5 * (cell.replicates[0].final_mean_a + *cell.replicates[0].final_mean_b)));
    }
}

TEST_CASE("find_bifurcation") {
    CHECK(find_bifurcation(grid_of({700, 700, 700, 700}), "lambda", 100).empty());
    const auto pairs = find_bifurcation(grid_of({729, 728, 528, 530}), "lambda", 100);
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0] == std::pair<std::size_t, std::size_t>{1, 2});
    CHECK_THROWS_AS(find_bifurcation(grid_of({1, 2}), "a", 100), std::invalid_argument);
}

TEST_CASE("lambda endpoints at a = 0.02 land on opposite sides") {
    SweepSpec spec;
    spec.base.prior.a = 0.02;
    spec.axes = {{"lambda", {0.0, 4.0}}};
    spec.T_max = 400;
    const SweepResult r = run_sweep(spec);
    CHECK(r.cells[0].median_final_mean > 700.0);
    CHECK(r.cells[1].median_final_mean < 560.0);
    CHECK(r.cells[0].median_final_mean >= r.cells[1].median_final_mean);
    CHECK(find_bifurcation(r, "lambda", 100).size() == 1);
}

TEST_CASE("a=0.02, lambda=2 run stabilizes between generations 100 and 300") {
    ScenarioConfig cfg;
    cfg.prior.a = 0.02;
    cfg.lambda = 2.0;
    cfg.T = 300;
    const Trajectory t = run_trajectory(cfg);
    const auto detected = detect_stable(t.summaries, 50, 0.5);
    REQUIRE(detected.has_value());
    CHECK(*detected >= 100);
    CHECK(*detected <= 300);
}

TEST_CASE("landscape orientation: stability at low lambda and strong bias (small a)") {
    SweepSpec spec;
    spec.axes = {{"lambda", {0.0, 4.0}}, {"a", {0.005, 0.1}}};
    spec.T_max = 600;
    const SweepResult r = run_sweep(spec);
    const std::vector<std::size_t> stable{0, 0}, changed{1, 1};
    CHECK(r.cells[r.index(stable)].median_final_mean > 700.0);
    CHECK(r.cells[r.index(changed)].median_final_mean < 560.0);
}
