// Parallel kernels against their serial references. Run with e.g.
//   OMP_NUM_THREADS=8 ./bench_kernels
#include "vnscale/clustering.hpp"

#include <benchmark/benchmark.h>

#include <map>

using namespace vnscale;

namespace {

const PointCloud& circles(Index n) {
    static std::map<Index, PointCloud> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, gen_interlinked_circles(n, 0.01, 1)).first;
    return it->second;
}

void BM_Distances(benchmark::State& state) {
    const auto& c = circles(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(pairwise_distances(c));
}

void BM_DistancesSerial(benchmark::State& state) {
    const auto& c = circles(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(pairwise_distances_serial(c));
}

void BM_Sweep(benchmark::State& state) {
    const auto d = pairwise_distances(circles(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(entropy_sweep(d, {50, 1000.0, 1e-8}));
}

void BM_SweepSerial(benchmark::State& state) {
    const auto d = pairwise_distances(circles(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(entropy_sweep_serial(d, {50, 1000.0, 1e-8}));
}

void BM_KMeans(benchmark::State& state) {
    const auto& c = circles(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(kmeans(c, {3, 300, 10, 1}));
}

}  // namespace

BENCHMARK(BM_Distances)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DistancesSerial)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sweep)->Arg(200)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepSerial)->Arg(200)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KMeans)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
