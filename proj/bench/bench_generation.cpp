#include <benchmark/benchmark.h>

#include "actuation/engine.hpp"

namespace {

actuation::ScenarioConfig bench_config(actuation::ModelKind model) {
    actuation::ScenarioConfig cfg;
    cfg.model = model;
    cfg.prior.a = 0.02;
    cfg.lambda = 2.0;
    return cfg;
}

void step(benchmark::State& state, actuation::ModelKind model, bool parallel) {
    const actuation::ScenarioConfig cfg = bench_config(model);
    const actuation::GenerationKernel kernel(cfg);
    const actuation::PopulationState pop = actuation::init_population(cfg);
    for (auto _ : state) {
        auto next = parallel ? actuation::step_generation(pop, kernel) : actuation::step_generation_serial(pop, kernel);
        benchmark::DoNotOptimize(next.agents.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(pop.size()));
}

void BM_StepSerial(benchmark::State& s) { step(s, actuation::ModelKind::bias, false); }
void BM_StepOpenMP(benchmark::State& s) { step(s, actuation::ModelKind::bias, true); }
void BM_StepSerialModel4(benchmark::State& s) { step(s, actuation::ModelKind::individual_weight, false); }
void BM_StepOpenMPModel4(benchmark::State& s) { step(s, actuation::ModelKind::individual_weight, true); }

}  // namespace

BENCHMARK(BM_StepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StepOpenMP)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StepSerialModel4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StepOpenMPModel4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
