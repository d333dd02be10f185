// Acceptance checks: one PASS/FAIL line per criterion.
//   acceptance                 run all criteria
//   acceptance --criterion N   run criterion N only
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <omp.h>

#include "actuation/commands.hpp"
#include "actuation/engine.hpp"
#include "actuation/sweep.hpp"

using namespace actuation;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ScenarioConfig model0(double a, double lambda, int T) {
    ScenarioConfig cfg;
    cfg.prior.a = a;
    cfg.lambda = lambda;
    cfg.T = T;
    return cfg;
}

ScenarioConfig two_group(ModelKind model, int T) {
    ScenarioConfig cfg;
    cfg.model = model;
    cfg.prior.a = 0.01;
    cfg.lambda = 0.0;
    cfg.T = T;
    return cfg;
}

double average(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

Outcome c1() {
    omp_set_num_threads(1);
    const auto t0 = std::chrono::steady_clock::now();
    const Trajectory t = run_trajectory(model0(0.02, 2.0, 100));
    const double elapsed = seconds_since(t0);
    const double m0 = t.summaries.front().overall.mean, m100 = t.final().overall.mean;
    const bool pass = std::abs(m100 - 530.0) <= 15.0 && std::abs(m0 - 720.0) <= 2.0 && elapsed <= 60.0;
    return {pass, fmt("mean C^0 = %.2f (720 +/- 2), mean C^100 = %.2f (530 +/- 15), %.1f s single-threaded (<= 60)", m0,
                      m100, elapsed)};
}

Outcome c2() {
    omp_set_num_threads(1);
    const auto t0 = std::chrono::steady_clock::now();
    const Trajectory t = run_trajectory(model0(0.01, 0.0, 500));
    const double elapsed = seconds_since(t0);
    const double m = t.final().overall.mean;
    return {std::abs(m - 720.0) <= 10.0 && elapsed <= 120.0,
            fmt("mean C^500 = %.2f (720 +/- 10), %.1f s single-threaded (<= 120)", m, elapsed)};
}

// Drift is averaged over steps where no agent of either generation sits on a
// domain boundary; clipping at the boundary is not part of the drift law.
Outcome c3() {
    std::vector<double> drifts, var_ratios;
    const SearchDomain d = search_domain(LexiconParams{});
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        ScenarioConfig cfg = model0(0.5, 2.0, 100);
        cfg.prior.family = PriorFamily::flat;
        cfg.seed = seed;
        TrajectoryOptions opts;
        opts.emit_samples_every = 1;
        const Trajectory t = run_trajectory(cfg, opts);
        auto touches = [&](const PopulationState& p) {
            return std::any_of(p.agents.begin(), p.agents.end(), [&](const Agent& a) { return a.c <= d.lo || a.c >= d.hi; });
        };
        for (std::size_t g = 0; g + 1 < t.samples.size(); ++g)
            if (!touches(t.samples[g]) && !touches(t.samples[g + 1]))
                drifts.push_back(t.summaries[g + 1].overall.mean - t.summaries[g].overall.mean);
        const double m = static_cast<double>(cfg.M);
        const double var0 = std::pow(t.summaries[0].overall.sd, 2) * (m - 1.0) / m;
        const double predicted = (var0 + cfg.lex.sigma_a * cfg.lex.sigma_a) / cfg.n;
        var_ratios.push_back(std::pow(t.summaries[1].overall.sd, 2) / predicted);
    }
    const double drift = average(drifts), ratio = average(var_ratios);
    return {std::abs(drift + 2.0) <= 0.2 && std::abs(ratio - 1.0) <= 0.1,
            fmt("drift = %.3f Hz/gen over %zu interior steps (-2 +/- 0.2); Var(C^1)/predicted = %.3f (1 +/- 0.1)",
                drift, drifts.size(), ratio)};
}

Outcome c4() {
    SweepSpec spec;
    spec.base = model0(0.02, 0.0, 2500);
    std::vector<double> lambdas;
    for (int k = 0; k <= 16; ++k) lambdas.push_back(0.25 * k);
    spec.axes = {{"lambda", lambdas}};
    spec.T_max = 2500;
    spec.replicates = 3;
    const SweepResult r = run_sweep(spec);
    const auto pairs = find_bifurcation(r, "lambda", 100.0);
    std::string medians;
    for (const SweepCell& c : r.cells) medians += fmt(" %.4g:%.0f", c.values[0], c.median_final_mean);
    bool pass = false;
    std::string where = "none";
    for (const auto& [lo, hi] : pairs) {
        const bool ok = r.cells[lo].median_final_mean >= 700.0 && r.cells[hi].median_final_mean <= 560.0;
        if (ok && !pass) where = fmt("lambda %.2f -> %.2f", r.cells[lo].values[0], r.cells[hi].values[0]);
        pass = pass || ok;
    }
    return {pass, "jump at " + where + "; medians" + medians};
}

Outcome c5() {
    // (a) symmetric weak contact, (b) asymmetric contact; 5 seeds each.
    std::vector<double> move_a, move_b, from_config_a, from_config_b;
    ScenarioConfig a = two_group(ModelKind::contact, 50);
    a.a_prob = a.b_prob = 0.01;
    std::string per_seed;
    for (std::uint64_t s = 1; s <= 5; ++s) {
        a.seed = s;
        const Trajectory t = run_trajectory(a);
        move_a.push_back(std::abs(t.final().group_a.mean - t.summaries[0].group_a.mean));
        move_b.push_back(std::abs(t.final().group_b->mean - t.summaries[0].group_b->mean));
        from_config_a.push_back(std::abs(t.final().group_a.mean - a.init_a.mean));
        from_config_b.push_back(std::abs(t.final().group_b->mean - a.init_b.mean));
        per_seed += fmt(" %.1f/%.1f", move_a.back(), move_b.back());
    }
    const double ma = average(move_a), mb = average(move_b);
    const bool pass_a = ma < 10.0 && mb < 10.0;

    ScenarioConfig b = two_group(ModelKind::contact, 50);
    b.a_prob = 0.05;
    b.b_prob = 0.005;
    int ok = 0;
    std::string finals;
    for (std::uint64_t s = 1; s <= 5; ++s) {
        b.seed = s;
        const Trajectory t = run_trajectory(b);
        const double fa = t.final().group_a.mean, fb = t.final().group_b->mean;
        const double common = 0.5 * (fa + fb);
        ok += std::abs(fa - fb) <= 60.0 && std::abs(fa - common) <= 30.0 && common > 630.0;
        finals += fmt(" %.0f/%.0f", fa, fb);
    }
    const bool pass_b = ok == 5;
    return {pass_a && pass_b,
            fmt("(a) mean |move| from C^0 A %.2f, B %.2f Hz (< 10) [per seed A/B:%s; from the configured initial "
                "means A %.2f, B %.2f] %s; (b) %d/5 seeds converge within 30 Hz on "
                "the A side [A/B at t=50:%s] %s",
                ma, mb, per_seed.c_str(), average(from_config_a), average(from_config_b), pass_a ? "ok" : "FAIL", ok, finals.c_str(), pass_b ? "ok" : "FAIL")};
}

Outcome c6() {
    ScenarioConfig cfg;
    cfg.model = ModelKind::variant_weight;
    cfg.prior.a = 0.01;
    cfg.T = 250;
    cfg.w = 1.0;
    const double m1 = run_trajectory(cfg).final().overall.mean;
    cfg.w = 1.1;
    const double m11 = run_trajectory(cfg).final().overall.mean;
    const bool pass_1 = std::abs(m1 - 720.0) <= 10.0, pass_11 = m11 <= 560.0;
    return {pass_1 && pass_11, fmt("w=1.0: mean C^250 = %.2f (720 +/- 10) %s; w=1.1: mean C^250 = %.2f (<= 560) %s", m1,
                                   pass_1 ? "ok" : "FAIL", m11, pass_11 ? "ok" : "FAIL")};
}

Outcome c7() {
    std::string detail;
    bool pass = true;
    for (double bw : {0.2, 0.5}) {
        ScenarioConfig cfg = two_group(ModelKind::group_weight, 250);
        cfg.a_prob = cfg.b_prob = 0.03;
        cfg.a_weight = 0.5;
        cfg.b_weight = bw;
        const Trajectory t = run_trajectory(cfg);
        double dev_a = 0.0, dev_b = 0.0;
        for (const GenerationSummary& s : t.summaries) {
            dev_a = std::max(dev_a, std::abs(s.group_a.mean - t.summaries[0].group_a.mean));
            dev_b = std::max(dev_b, std::abs(s.group_b->mean - t.summaries[0].group_b->mean));
        }
        const bool ok = dev_a <= 15.0 && dev_b <= 15.0;
        pass = pass && ok;
        detail += fmt("aWeight=0.5 bWeight=%.1f: max drift A %.2f, B %.2f (<= 15) %s; ", bw, dev_a, dev_b,
                      ok ? "ok" : "FAIL");
    }
    ScenarioConfig cfg = two_group(ModelKind::group_weight, 250);
    cfg.a_prob = cfg.b_prob = 0.03;
    cfg.a_weight = 0.2;
    cfg.b_weight = 1.0;
    const double m = run_trajectory(cfg).final().overall.mean;
    pass = pass && m <= 560.0;
    detail += fmt("aWeight=0.2 bWeight=1.0: population mean C^250 = %.2f (<= 560) %s", m, m <= 560.0 ? "ok" : "FAIL");
    return {pass, detail};
}

Outcome c8() {
    auto run = [](double rho, double w_max) {
        std::vector<double> change;
        for (std::uint64_t s = 1; s <= 5; ++s) {
            ScenarioConfig cfg;
            cfg.model = ModelKind::individual_weight;
            cfg.prior.a = 0.02;
            cfg.lambda = 0.0;
            cfg.T = 500;
            cfg.rho = rho;
            cfg.w_max = w_max;
            cfg.seed = s;
            const Trajectory t = run_trajectory(cfg);
            change.push_back(t.final().overall.mean - t.summaries[0].overall.mean);
        }
        return average(change);
    };
    const double stable = run(0.5, 100.0), moved = run(1.0, 1000.0);
    const bool pass_a = std::abs(stable) <= 15.0, pass_b = moved <= -50.0;
    return {pass_a && pass_b,
            fmt("rho=0.5 w_max=100: mean change %.2f Hz (|.| <= 15) %s; rho=1 w_max=1000: mean change %.2f Hz (<= -50) "
                "%s; 5 seeds each",
                stable, pass_a ? "ok" : "FAIL", moved, pass_b ? "ok" : "FAIL")};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome c9() {
    std::vector<std::string> failed;
    auto check = [&](bool ok, const char* name) {
        if (!ok) failed.push_back(name);
    };
    auto samples = [](const ScenarioConfig& cfg) {
        TrajectoryOptions opts;
        opts.emit_samples_every = 1;
        return run_trajectory(cfg, opts).samples;
    };
    ScenarioConfig base = model0(0.02, 1.0, 40);
    const auto reference = samples(base);

    ScenarioConfig m2 = base;
    m2.model = ModelKind::variant_weight;
    m2.w = 1.0;
    check(samples(m2) == reference, "Model 2 w=1");

    ScenarioConfig m4 = base;
    m4.model = ModelKind::individual_weight;
    m4.w_max = 1.0;
    m4.rho = 0.5;
    check(samples(m4) == reference, "Model 4 w_max=1");

    ScenarioConfig m1 = base;
    m1.model = ModelKind::contact;
    m1.a_prob = m1.b_prob = 0.03;
    ScenarioConfig m3 = m1;
    m3.model = ModelKind::group_weight;
    m3.a_weight = m3.b_weight = 1.0;
    check(samples(m3) == samples(m1), "Model 3 aWeight=bWeight=1");

    ScenarioConfig isolated = base;
    isolated.model = ModelKind::contact;
    isolated.M = 1000;
    const auto joint = samples(isolated);
    ScenarioConfig single_a = base, single_b = base;
    single_b.init_a = isolated.init_b;
    single_b.seed = group_stream_seed(isolated.seed, Group::B);
    const auto ra = samples(single_a), rb = samples(single_b);
    bool groups_ok = true;
    for (std::size_t t = 0; t < joint.size(); ++t) {
        const auto ja = joint[t].group(Group::A), jb = joint[t].group(Group::B);
        for (std::size_t i = 0; i < ja.size(); ++i) groups_ok = groups_ok && ja[i].c == ra[t].agents[i].c;
        for (std::size_t i = 0; i < jb.size(); ++i) groups_ok = groups_ok && jb[i].c == rb[t].agents[i].c;
    }
    check(groups_ok, "Model 1 aProb=bProb=0 per group");

    // Uniform-weight argmax invariance and endpoint symmetry.
    std::mt19937_64 gen(2024);
    std::normal_distribution<double> z(0.0, 50.0);
    std::uniform_real_distribution<double> center(540.0, 720.0), k(1.5, 50.0), adist(0.005, 1.0);
    bool invariant = true, symmetric = true;
    const LexiconParams lex;
    for (int trial = 0; trial < 200; ++trial) {
        PriorSpec p;
        p.a = adist(gen);
        const double c0 = center(gen), scale = k(gen);
        std::vector<Token> ones(100), scaled(100);
        for (int i = 0; i < 100; ++i) {
            ones[i] = {c0 + z(gen), 1.0};
            scaled[i] = {ones[i].y, scale};
        }
        const MapEstimator est(p, lex);
        invariant = invariant && std::abs(est.estimate(TokenBatch{ones}) - est.estimate(TokenBatch{scaled})) <= 1e-9;
        const double dd = std::uniform_real_distribution<double>(0.0, 99.5)(gen);
        symmetric = symmetric && std::abs(prior_log_density(630.0 + dd, p, lex) - prior_log_density(630.0 - dd, p, lex)) <=
                                     1e-12 * (1.0 + std::abs(prior_log_density(630.0 + dd, p, lex)));
    }
    check(invariant, "uniform-weight argmax invariance");
    check(symmetric, "endpoint-prior symmetry");

    // Byte-identical CSV for repeated seeds under different worker counts.
    const std::filesystem::path root = std::filesystem::temp_directory_path() / "actuation_acceptance_c9";
    ScenarioConfig det = two_group(ModelKind::individual_weight, 15);
    det.rho = 0.8;
    det.w_max = 20;
    std::vector<std::string> csvs;
    for (int threads : {1, 2, 4, 1}) {
        omp_set_num_threads(threads);
        const auto dir = root / std::to_string(csvs.size());
        std::filesystem::remove_all(dir);
        cmd_run(det, {dir, std::nullopt, 5, std::nullopt, false});
        csvs.push_back(slurp(dir / "trajectory.csv") + slurp(dir / "samples.csv"));
    }
    omp_set_num_threads(omp_get_num_procs());
    check(std::all_of(csvs.begin(), csvs.end(), [&](const std::string& s) { return s == csvs[0]; }),
          "byte-identical CSV across worker counts");
    std::filesystem::remove_all(root);

    std::string detail = failed.empty() ? "all 8 properties hold" : "failed:";
    for (const std::string& f : failed) detail += " [" + f + "]";
    return {failed.empty(), detail};
}

Outcome c10() {
    std::mt19937_64 gen(10);
    std::uniform_int_distribution<int> ndist(1, 100);
    std::uniform_real_distribution<double> adist(0.005, 1.0), center(500.0, 760.0);
    std::normal_distribution<double> z(0.0, 50.0);
    const LexiconParams lex;
    const SearchDomain d = search_domain(lex);
    double worst = 0.0;
    int misses = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        PriorSpec p;
        p.a = adist(gen);
        std::vector<Token> tokens(static_cast<std::size_t>(ndist(gen)));
        const double c0 = center(gen);
        for (Token& t : tokens) t = {c0 + z(gen), 1.0};
        const TokenBatch batch{tokens};
        const double c = map_estimate(batch, p, lex);
        double best = d.lo, best_value = -INFINITY;
        for (int k = 0; k <= 19900; ++k) {
            const double g = k == 19900 ? d.hi : d.lo + 0.01 * k;
            const double v = posterior_log_density(g, batch, p, lex);
            if (v > best_value) {
                best_value = v;
                best = g;
            }
        }
        worst = std::max(worst, std::abs(c - best));
        misses += std::abs(c - best) > 0.02;
    }
    return {misses == 0, fmt("%d/1000 batches off by > 0.02 Hz; worst |map - dense grid| = %.4f Hz", misses, worst)};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    int only = 0;
    app.add_option("--criterion", only, "Run one criterion (1-10)")->check(CLI::Range(1, 10));
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::function<Outcome()>> criteria{c1, c2, c3, c4, c5, c6, c7, c8, c9, c10};
    const char* names[] = {"full coarticulation by t=100", "non-phonologization regime", "flat-prior drift oracle",
                           "bifurcation existence",     "Model 1 contact",            "Model 2 threshold",
                           "Model 3 group weights",     "Model 4 noise floor",        "reduction invariants",
                           "MAP optimizer oracle"};
    bool all = true;
    for (int i = 1; i <= 10; ++i) {
        if (only != 0 && i != only) continue;
        const int threads = omp_get_max_threads();
        const auto t0 = std::chrono::steady_clock::now();
        const Outcome o = criteria[i - 1]();
        omp_set_num_threads(threads);
        std::printf("C%d %s: %s (%.1f s) %s\n", i, o.pass ? "PASS" : "FAIL", names[i - 1], seconds_since(t0),
                    o.detail.c_str());
        std::fflush(stdout);
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
