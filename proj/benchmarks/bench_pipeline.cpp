#include <benchmark/benchmark.h>

#include "ucm/importance.hpp"
#include "ucm/ingest.hpp"
#include "ucm/scenario.hpp"
#include "ucm/simulate.hpp"
#include "ucm/usage_model.hpp"

#ifndef UCM_FIXTURE_DIR
#define UCM_FIXTURE_DIR "fixtures"
#endif

namespace {

const std::string& model_text() {
    static const std::string text =
        ucm::read_file(std::string(UCM_FIXTURE_DIR) + "/telephone/model.json");
    return text;
}

const ucm::UcmModel& model() {
    static const ucm::UcmModel m = ucm::parse_model(model_text());
    return m;
}

const ucm::FlatChain& chain() {
    static const ucm::FlatChain c = ucm::flatten(ucm::convert(model()));
    return c;
}

const std::vector<ucm::ScenarioDefinition>& definitions() {
    static const auto defs = ucm::load_scenarios(
        std::string(UCM_FIXTURE_DIR) + "/telephone/scenarios.json", model());
    return defs;
}

void BM_ParseModel(benchmark::State& state) {
    for (auto _ : state) {
        auto m = ucm::parse_model(model_text());
        benchmark::DoNotOptimize(m);
    }
}
BENCHMARK(BM_ParseModel);

void BM_ValidateModel(benchmark::State& state) {
    for (auto _ : state) {
        auto report = ucm::validate_model(model());
        benchmark::DoNotOptimize(report);
    }
}
BENCHMARK(BM_ValidateModel);

void BM_ConvertAndFlatten(benchmark::State& state) {
    for (auto _ : state) {
        auto flat = ucm::flatten(ucm::convert(model()));
        benchmark::DoNotOptimize(flat);
    }
}
BENCHMARK(BM_ConvertAndFlatten);

void BM_ResolveScenarios(benchmark::State& state) {
    for (auto _ : state) {
        for (const auto& def : definitions()) {
            auto path = ucm::resolve_scenario(def, chain());
            benchmark::DoNotOptimize(path);
        }
    }
}
BENCHMARK(BM_ResolveScenarios);

void BM_EnumerateScenarios(benchmark::State& state) {
    for (auto _ : state) {
        auto defs = ucm::enumerate_scenarios(model(), chain());
        benchmark::DoNotOptimize(defs);
    }
}
BENCHMARK(BM_EnumerateScenarios);

void BM_Estimate(benchmark::State& state) {
    for (auto _ : state) {
        auto est = ucm::estimate(chain(), static_cast<int>(state.range(0)), 42);
        benchmark::DoNotOptimize(est);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Estimate)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
