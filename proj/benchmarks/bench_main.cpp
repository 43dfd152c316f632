#include <benchmark/benchmark.h>

#include "cliquecover/cliques.hpp"
#include "cliquecover/cover.hpp"
#include "cliquecover/graph.hpp"

namespace cc = cliquecover;

static void BM_GenerateGnp(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(cc::generate_gnp(n, 0.5, cc::Seed{seed++}));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cc::pair_count(n)));
}
BENCHMARK(BM_GenerateGnp)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_CountPerEdge(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto j = static_cast<std::size_t>(state.range(1));
    const auto g = cc::generate_gnp(n, 0.5, cc::Seed{1});
    for (auto _ : state) benchmark::DoNotOptimize(cc::count_per_edge(j, g));
}
BENCHMARK(BM_CountPerEdge)->Args({256, 4})->Args({512, 4})->Args({256, 5})->Unit(benchmark::kMillisecond);

static void BM_SelectCliques(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto g = cc::generate_gnp(n, 0.5, cc::Seed{1});
    const auto stats = cc::count_per_edge(4, g);
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(cc::select_cliques(g, stats, 1, cc::Seed{seed++}));
}
BENCHMARK(BM_SelectCliques)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_MaxClique(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto g = cc::generate_gnp(n, 0.5, cc::Seed{1});
    for (auto _ : state) benchmark::DoNotOptimize(cc::max_clique(g));
}
BENCHMARK(BM_MaxClique)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_RunCover(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto g = cc::generate_gnp(n, 0.5, cc::Seed{1});
    cc::CoverParams params;
    for (auto _ : state) benchmark::DoNotOptimize(cc::run_cover(g, params));
}
BENCHMARK(BM_RunCover)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
