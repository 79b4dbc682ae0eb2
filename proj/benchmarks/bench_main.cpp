#include <benchmark/benchmark.h>

#include "salss/builtin.hpp"
#include "salss/lss.hpp"
#include "salss/observe.hpp"
#include "salss/smc.hpp"

using namespace salss;

namespace {

SchedulerClass parse(const char* spec) {
    return *SchedulerClass::parse(spec);
}

}  // namespace

static void BM_SimulateRun(benchmark::State& state, const char* model_name, const char* spec) {
    const SaModel model = builtin(model_name);
    const GoalSet goal = goal_set(model, "win");
    const LssScheduler sched{SchedulerId{12345}, parse(spec), Discretisation{2}};
    EstimationParams params;
    RunWorkspace ws;
    std::uint64_t run = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_run(model, goal, sched, params, run++, ws));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK_CAPTURE(BM_SimulateRun, M1_hist_ve, "M1", "hist:v,e");
BENCHMARK_CAPTURE(BM_SimulateRun, M3_ml_to, "M3", "ml:t,o");
BENCHMARK_CAPTURE(BM_SimulateRun, M2_ml, "M2", "ml:");

static void BM_Decide(benchmark::State& state) {
    ObservationKey key;
    for (std::uint64_t w = 0; w < static_cast<std::uint64_t>(state.range(0)); ++w) {
        key.push(w * 0x9E3779B97F4A7C15ULL);
    }
    std::uint32_t id = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(decide(SchedulerId{id++}, key, 2));
    }
}
BENCHMARK(BM_Decide)->Arg(3)->Arg(6)->Arg(10);

static void BM_Project(benchmark::State& state) {
    const SaModel model = builtin("M3");
    RunContext ctx = initial_context(model);
    ctx.state.values = {0.3, 0.7, 0.1};
    ctx.state.expirations = {0.9, 0.2, 0.5};
    ctx.elapsed = 1.25;
    const Observer observer{all_classes()[static_cast<std::size_t>(state.range(0))], Discretisation{4}};
    ObservationKey key;
    for (auto _ : state) {
        project_into(observer, ctx, key);
        benchmark::DoNotOptimize(key.words().data());
    }
    state.SetLabel(observer.cls.spec());
}
BENCHMARK(BM_Project)->DenseRange(0, 17);

static void BM_LssExperimentSmall(benchmark::State& state) {
    const SaModel model = builtin("M1");
    EstimationParams params;
    params.epsilon = 0.05;
    for (auto _ : state) {
        benchmark::DoNotOptimize(lss_experiment(model, "win", parse("ml:e"), Discretisation{2}, 100, params));
    }
}
BENCHMARK(BM_LssExperimentSmall)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
