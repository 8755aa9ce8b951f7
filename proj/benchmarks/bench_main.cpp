#include "rangerenew/laws.hpp"
#include "rangerenew/moments.hpp"
#include "rangerenew/montecarlo.hpp"
#include "rangerenew/ratefn.hpp"
#include "rangerenew/rng.hpp"

#include <benchmark/benchmark.h>

using namespace rangerenew;

static void BM_PhiloxU64(benchmark::State& state) {
    Philox rng(1, 0);
    for (auto _ : state) benchmark::DoNotOptimize(rng.next_u64());
}
BENCHMARK(BM_PhiloxU64);

static void BM_ZipfSample(benchmark::State& state) {
    DiscreteLaw law = make_zipf(0.5);
    Philox rng(1, 0);
    for (auto _ : state) benchmark::DoNotOptimize(law.sample(rng));
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ZipfSample);

static void BM_GeometricSample(benchmark::State& state) {
    DiscreteLaw law = make_geometric(0.5);
    Philox rng(1, 0);
    for (auto _ : state) benchmark::DoNotOptimize(law.sample(rng));
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_GeometricSample);

static void BM_Mu(benchmark::State& state) {
    DiscreteLaw law = make_zipf(0.5);
    double t = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(mu(law, t).value);
}
BENCHMARK(BM_Mu)->Arg(100)->Arg(10000)->Arg(1000000)->Arg(100000000);

static void BM_ExactMean(benchmark::State& state) {
    DiscreteLaw law = make_zipf(0.5);
    std::int64_t n = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(exact_mean_Rn(law, n).value);
}
BENCHMARK(BM_ExactMean)->Arg(1000)->Arg(100000);

static void BM_RateFnIntegral(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(lambda_gamma_integral(0.5, 0.5, 1e-10).value);
}
BENCHMARK(BM_RateFnIntegral);

static void BM_PoissonizedReplica(benchmark::State& state) {
    DiscreteLaw law = make_zipf(0.5);
    double t = static_cast<double>(state.range(0));
    PoissonizedPlan plan = build_poissonized_plan(law, t, 1e-6);
    Philox rng(7, 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(run_poissonized_replica(law, plan, rng));
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PoissonizedReplica)->Arg(1000)->Arg(100000);

static void BM_DirectReplica(benchmark::State& state) {
    DiscreteLaw law = make_zipf(0.5);
    std::int64_t n = state.range(0);
    for (auto _ : state) {
        SimBatch b = simulate_direct(law, n, 1, 7, 1);
        benchmark::DoNotOptimize(b.values[0]);
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_DirectReplica)->Arg(1000)->Arg(100000);

BENCHMARK_MAIN();
