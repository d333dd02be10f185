#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <omp.h>

#include "actuation/commands.hpp"
#include "actuation/presets.hpp"

namespace {

void apply_worker_env() {
    const char* env = std::getenv("ACTUATION_WORKERS");
    if (!env || !*env) return;
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 1) throw actuation::ConfigError("ACTUATION_WORKERS", "expected a positive integer");
    omp_set_num_threads(static_cast<int>(n));
}

void report(const actuation::RunManifest& manifest, const std::filesystem::path& dir) {
    for (const std::string& name : manifest.outputs) std::cout << (dir / name).string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Iterated-learning simulator of coarticulation phonologization"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(ACTUATION_VERSION));

    std::string config_path;
    std::string figure;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<int> emit_samples;
    std::optional<int> replicates;
    bool cell_trajectories = false;

    auto* run = app.add_subcommand("run", "Run one scenario and write its trajectory");
    run->add_option("--config", config_path, "Scenario JSON file")->required()->check(CLI::ExistingFile);
    run->add_option("--seed", seed, "Override the config seed");
    run->add_option("--out-dir", out_dir, "Output directory");
    run->add_option("--emit-samples", emit_samples, "Write per-agent c every k generations")
        ->check(CLI::NonNegativeNumber);

    auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep and write CSV plus heatmap");
    sweep->add_option("--config", config_path, "Sweep JSON file")->required()->check(CLI::ExistingFile);
    sweep->add_option("--seed", seed, "Override the base seed");
    sweep->add_option("--out-dir", out_dir, "Output directory");
    sweep->add_option("--replicates", replicates, "Replicates per cell")->check(CLI::PositiveNumber);
    sweep->add_flag("--cell-trajectories", cell_trajectories, "Also write one trajectory CSV per cell");

    auto* replicate = app.add_subcommand("replicate", "Run a figure preset");
    std::string ids;
    for (const std::string& id : actuation::preset_ids()) ids += (ids.empty() ? "" : ", ") + id;
    replicate->add_option("--figure", figure, "Figure id: " + ids)->required();
    replicate->add_option("--seed", seed, "Override the preset seed");
    replicate->add_option("--out-dir", out_dir, "Output directory");
    replicate->add_option("--emit-samples", emit_samples, "Write per-agent c every k generations (single runs)")
        ->check(CLI::NonNegativeNumber);
    replicate->add_option("--replicates", replicates, "Replicates per cell (sweeps)")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        apply_worker_env();
        actuation::CommandOptions options;
        options.out_dir = out_dir;
        options.seed = seed;
        options.emit_samples = emit_samples;
        options.replicates = replicates;
        options.cell_trajectories = cell_trajectories;

        actuation::RunManifest manifest;
        if (*run || *sweep) {
            const actuation::ParsedConfig parsed = actuation::parse_config(config_path);
            if (*run) {
                const auto* cfg = std::get_if<actuation::ScenarioConfig>(&parsed);
                if (!cfg) throw actuation::ConfigError("", "'run' expects a scenario config; use 'sweep' for axes");
                manifest = actuation::cmd_run(*cfg, options);
            } else {
                const auto* spec = std::get_if<actuation::SweepSpec>(&parsed);
                if (!spec) throw actuation::ConfigError("axes", "'sweep' expects a config with axes");
                manifest = actuation::cmd_sweep(*spec, options);
            }
        } else {
            manifest = actuation::cmd_replicate(figure, options);
        }
        report(manifest, options.out_dir);
    } catch (const actuation::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
