#include "actuation/presets.hpp"

#include <cmath>

namespace actuation {

std::vector<double> linspace_step(double lo, double hi, double step) {
    const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    // Round to 1e-9 so that e.g. 0.005 * 7 prints as 0.035.
    for (long k = 0; k < count; ++k) out.push_back(std::round((lo + step * static_cast<double>(k)) * 1e9) / 1e9);
    return out;
}

std::vector<std::string> preset_ids() { return {"fig4", "fig5", "fig6", "fig8", "fig9", "fig9-caption", "fig10"}; }

namespace {

SweepSpec fixed_length_sweep(const ScenarioConfig& base, std::vector<SweepAxis> axes, int T) {
    SweepSpec spec;
    spec.base = base;
    spec.axes = std::move(axes);
    spec.T_max = T;
    spec.stop_when_stable = false;
    return spec;
}

ScenarioConfig two_group_base(ModelKind model) {
    ScenarioConfig cfg;
    cfg.model = model;
    cfg.lambda = 0.0;
    cfg.prior.a = 0.01;
    return cfg;
}

}  // namespace

Preset make_preset(std::string_view id) {
    if (id == "fig4") {
        ScenarioConfig cfg;
        cfg.prior.a = 0.02;
        cfg.lambda = 2.0;
        cfg.T = 100;
        return {"fig4", "Model 0, a=0.02, lambda=2, M=500, n=100, T=100; samples every 10 generations", cfg, 10,
                false};
    }
    if (id == "fig5") {
        SweepSpec spec;
        spec.base.model = ModelKind::bias;
        spec.axes = {{"lambda", linspace_step(0.0, 4.0, 0.25)}, {"a", linspace_step(0.005, 0.1, 0.005)}};
        spec.T_max = 2500;
        spec.replicates = 1;
        return {"fig5", "Model 0 landscape: lambda 0..4 step 0.25 x a 0.005..0.1 step 0.005, stable state or T=2500",
                spec, 0, false};
    }
    if (id == "fig6") {
        ScenarioConfig base;
        base.model = ModelKind::variant_weight;
        base.prior.a = 0.01;
        base.lambda = 0.0;
        return {"fig6", "Model 2 panels: w in {1, 1.05, 1.1, 1.5}, a=0.01, lambda=0, T=250",
                fixed_length_sweep(base, {{"w", {1.0, 1.05, 1.1, 1.5}}}, 250), 0, true};
    }
    if (id == "fig8") {
        const std::vector<double> probs{0.0, 0.01, 0.03, 0.06, 0.1};
        return {"fig8", "Model 1 panels: aProb x bProb in {0, 0.01, 0.03, 0.06, 0.1}, a=0.01, lambda=0, T=50",
                fixed_length_sweep(two_group_base(ModelKind::contact), {{"aProb", probs}, {"bProb", probs}}, 50), 0,
                true};
    }
    if (id == "fig9" || id == "fig9-caption") {
        ScenarioConfig base = two_group_base(ModelKind::group_weight);
        const double p = id == "fig9" ? 0.03 : 0.3;
        base.a_prob = p;
        base.b_prob = p;
        const std::vector<double> weights{0.2, 0.5, 1.0};
        return {std::string(id),
                "Model 3 panels: aWeight x bWeight in {0.2, 0.5, 1}, aProb=bProb=" + std::string(p == 0.03 ? "0.03" : "0.3") +
                    ", a=0.01, lambda=0, T=250",
                fixed_length_sweep(base, {{"aWeight", weights}, {"bWeight", weights}}, 250), 0, true};
    }
    if (id == "fig10") {
        ScenarioConfig base;
        base.model = ModelKind::individual_weight;
        base.prior.a = 0.02;
        base.lambda = 0.0;
        return {"fig10", "Model 4 panels: rho in {0, 0.5, 0.9, 1} x w_max in {10, 100, 1000}, a=0.02, lambda=0, T=500",
                fixed_length_sweep(base, {{"rho", {0.0, 0.5, 0.9, 1.0}}, {"w_max", {10.0, 100.0, 1000.0}}}, 500), 0,
                true};
    }
    throw ConfigError("figure", "unknown figure id '" + std::string(id) + "'");
}

}  // namespace actuation
