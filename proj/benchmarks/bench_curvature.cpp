#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "cfs/curvature.hpp"
#include "cfs/ranker.hpp"

namespace {

// Cheap deterministic generator so every run times the same inputs.
struct SplitMix {
    std::uint64_t state = 0xbe7c4u;
    double uniform() {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return static_cast<double>((z ^ (z >> 31)) >> 11) * 0x1.0p-53;
    }
};

std::vector<cfs::Triple> random_triples(std::size_t n) {
    SplitMix rng;
    std::vector<cfs::Triple> triples(n);
    for (cfs::Triple& t : triples) {
        t = {{rng.uniform(), rng.uniform()},
             {rng.uniform(), rng.uniform()},
             {rng.uniform(), rng.uniform()}};
    }
    return triples;
}

void BM_MengerCurvature(benchmark::State& state) {
    const auto triples = random_triples(4096);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(cfs::menger_curvature(triples[i]));
        i = (i + 1) & 4095;
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_MengerCurvature);

void BM_CornerCosine(benchmark::State& state) {
    const auto triples = random_triples(4096);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(cfs::corner_cosine(triples[i]));
        i = (i + 1) & 4095;
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_CornerCosine);

void BM_MeanCurvatureWeight(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    SplitMix rng;
    std::vector<cfs::Point2> plane(n);
    for (std::size_t i = 0; i < n; ++i) {
        plane[i] = {static_cast<double>(i) / static_cast<double>(n), rng.uniform()};
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(cfs::mean_curvature_weight(plane));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n - 2));
}
BENCHMARK(BM_MeanCurvatureWeight)->Range(64, 1 << 14);

} // namespace
