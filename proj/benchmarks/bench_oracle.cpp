// Compares the serial reference sweep against the OpenMP kernel on
// deterministic simulators of increasing size.

#include <benchmark/benchmark.h>

#include "softgait/oracle.hpp"

namespace {

using namespace softgait;

SimConfig bench_sim(std::uint64_t seed) {
    SimConfig sim;
    sim.seed = seed;
    sim.noise_sigma = {0.0, 0.0, 0.0};
    sim.wear_rate = 0.0;
    return sim;
}

void run_sweep(benchmark::State& state, bool parallel) {
    const SearchSpace space{static_cast<int>(state.range(0)), static_cast<int>(state.range(1))};
    const SimConfig sim = bench_sim(7);
    const EvaluationConfig eval{0.1, 3, 0.0};
    const RewardCoefficients k = preset(GaitAxis::PlusX);
    const EvaluatorFactory factory = [&]() { return make_sim_evaluator(sim, eval, true); };
    for (auto _ : state) {
        const OracleResult r =
            parallel ? oracle_sweep_parallel(factory, k, space) : oracle_sweep_serial(factory, k, space);
        benchmark::DoNotOptimize(r.best_reward);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(space.total_assignments()));
}

void BM_OracleSerial(benchmark::State& state) { run_sweep(state, false); }
void BM_OracleParallel(benchmark::State& state) { run_sweep(state, true); }

}  // namespace

BENCHMARK(BM_OracleSerial)->Args({2, 7})->Args({3, 7})->Args({4, 7})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleParallel)->Args({2, 7})->Args({3, 7})->Args({4, 7})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
