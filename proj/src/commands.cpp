#include "actuation/commands.hpp"

#include <cstdio>

#include "actuation/presets.hpp"

namespace actuation {

namespace {

void write_output(RunManifest& manifest, const std::filesystem::path& dir, const std::string& name,
                  const std::string& content) {
    write_file_atomic(dir / name, content);
    manifest.outputs.push_back(name);
}

void finish(RunManifest& manifest, const std::filesystem::path& dir) {
    manifest.outputs.push_back("manifest.json");
    manifest.finished_at = utc_timestamp();
    write_file_atomic(dir / "manifest.json", manifest.to_json().dump(2) + "\n");
}

std::string cell_file_name(const SweepResult& result, std::size_t cell, int replicate) {
    std::string name = "trajectory";
    for (std::size_t k = 0; k < result.axes.size(); ++k) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "_%s-%g", result.axes[k].name.c_str(), result.cells[cell].values[k]);
        name += buf;
    }
    return name + "_r" + std::to_string(replicate) + ".csv";
}

}  // namespace

RunManifest cmd_run(ScenarioConfig config, const CommandOptions& options) {
    if (options.seed) config.seed = *options.seed;
    config.validate();
    const int every = options.emit_samples.value_or(0);
    if (every < 0) throw ConfigError("emit-samples", "must be >= 0");

    RunManifest manifest;
    manifest.command = "run";
    manifest.started_at = utc_timestamp();
    manifest.seed = config.seed;
    manifest.config = to_json(config);

    TrajectoryOptions topts;
    topts.emit_samples_every = every;
    const Trajectory trajectory = run_trajectory(config, topts);

    write_output(manifest, options.out_dir, "trajectory.csv", trajectory_csv(trajectory));
    if (every > 0) write_output(manifest, options.out_dir, "samples.csv", samples_csv(trajectory));
    finish(manifest, options.out_dir);
    return manifest;
}

RunManifest cmd_sweep(SweepSpec spec, const CommandOptions& options) {
    if (options.seed) spec.base.seed = *options.seed;
    if (options.replicates) spec.replicates = *options.replicates;
    spec.validate();

    RunManifest manifest;
    manifest.command = "sweep";
    manifest.started_at = utc_timestamp();
    manifest.seed = spec.base.seed;
    manifest.config = to_json(spec);

    SweepOptions sopts;
    sopts.keep_trajectories = options.cell_trajectories;
    const SweepResult result = run_sweep(spec, sopts);

    write_output(manifest, options.out_dir, "sweep.csv", sweep_csv(result));
    std::string title = "median final mean c over";
    for (const SweepAxis& axis : spec.axes) title += " " + axis.name;
    write_output(manifest, options.out_dir, "heatmap.svg",
                 sweep_heatmap_svg(result, spec.base.lex.mu_i, spec.base.lex.mu_a, title));
    if (options.cell_trajectories) {
        const auto reps = static_cast<std::size_t>(spec.replicates);
        for (std::size_t job = 0; job < result.trajectories.size(); ++job) {
            const std::size_t cell = job / reps;
            const int r = static_cast<int>(job % reps);
            write_output(manifest, options.out_dir, cell_file_name(result, cell, r),
                         trajectory_csv(result.trajectories[job]));
        }
    }
    finish(manifest, options.out_dir);
    return manifest;
}

RunManifest cmd_replicate(std::string_view figure_id, const CommandOptions& options) {
    const Preset preset = make_preset(figure_id);
    CommandOptions opts = options;
    RunManifest manifest;
    if (const auto* cfg = std::get_if<ScenarioConfig>(&preset.config)) {
        if (!opts.emit_samples) opts.emit_samples = preset.emit_samples;
        manifest = cmd_run(*cfg, opts);
    } else {
        opts.cell_trajectories = opts.cell_trajectories || preset.cell_trajectories;
        manifest = cmd_sweep(std::get<SweepSpec>(preset.config), opts);
    }
    manifest.command = "replicate " + preset.id;
    write_file_atomic(opts.out_dir / "manifest.json", manifest.to_json().dump(2) + "\n");
    return manifest;
}

}  // namespace actuation
