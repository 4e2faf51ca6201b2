#include <benchmark/benchmark.h>

#include "lipband/harness.hpp"

namespace {

using namespace lipband;

ExperimentConfig bench_cfg(AlgoKind algo, long long horizon) {
    ExperimentConfig cfg;
    cfg.algo = algo;
    cfg.reward = RewardKind::Triangle;
    cfg.horizon = horizon;
    cfg.reps = 1;
    cfg.stride = horizon;
    cfg.bob_restart = false;
    return cfg;
}

void BM_ZoomingRun(benchmark::State& state) {
    const ExperimentConfig cfg = bench_cfg(AlgoKind::Zooming, state.range(0));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_once(cfg, seed++).final_regret);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_RMELRun(benchmark::State& state) {
    const ExperimentConfig cfg = bench_cfg(AlgoKind::RMEL, state.range(0));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_once(cfg, seed++).final_regret);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_BoBRun(benchmark::State& state) {
    const ExperimentConfig cfg = bench_cfg(AlgoKind::BoB, state.range(0));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_once(cfg, seed++).final_regret);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_AttackedRun(benchmark::State& state) {
    ExperimentConfig cfg = bench_cfg(AlgoKind::RMEL, state.range(0));
    cfg.attack = AttackKind::Oracle;
    cfg.adversary = AdversaryMode::Strong;
    cfg.budget = static_cast<double>(state.range(0)) / 16.0;
    std::uint64_t seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_once(cfg, seed++).final_regret);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_ZoomingRun)->Arg(10000)->Arg(50000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RMELRun)->Arg(10000)->Arg(50000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BoBRun)->Arg(10000)->Arg(50000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AttackedRun)->Arg(50000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
