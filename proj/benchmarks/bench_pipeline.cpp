#include <string>

#include <benchmark/benchmark.h>

#include "cfs/cross_validation.hpp"
#include "cfs/normalize.hpp"
#include "cfs/ranker.hpp"
#include "cfs/synthetic.hpp"

namespace {

const cfs::Dataset& synthetic(int index) {
    static const std::vector<cfs::Dataset> cache = [] {
        std::vector<cfs::Dataset> datasets;
        for (const cfs::SyntheticFile& file : cfs::all_synthetic_datasets()) {
            datasets.push_back(cfs::load_synthetic(file));
        }
        return datasets;
    }();
    return cache[static_cast<std::size_t>(index)];
}

void BM_RankFeatures(benchmark::State& state) {
    const cfs::Dataset& ds = synthetic(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(cfs::rank_features(ds));
    }
    state.SetLabel(std::to_string(ds.n_instances()) + "x" + std::to_string(ds.n_features()));
}
BENCHMARK(BM_RankFeatures)->DenseRange(0, 3);

void BM_Normalize(benchmark::State& state) {
    const cfs::Dataset& ds = synthetic(3);
    const cfs::NormKind kind = static_cast<cfs::NormKind>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(cfs::apply_normalizer(kind, ds.features));
    }
    state.SetLabel(cfs::to_string(kind));
}
BENCHMARK(BM_Normalize)->DenseRange(0, 7);

void BM_GridCell(benchmark::State& state) {
    const cfs::Dataset& ds = synthetic(1);
    cfs::GridSpec spec;
    spec.selectors = {cfs::SelectorKind::Cfs};
    spec.normalizers = {cfs::NormKind::MinMax};
    spec.classifiers = {"gnb"};
    spec.top_k = 7;
    for (auto _ : state) {
        benchmark::DoNotOptimize(cfs::run_grid(ds, spec, "bccds"));
    }
}
BENCHMARK(BM_GridCell);

} // namespace

BENCHMARK_MAIN();
