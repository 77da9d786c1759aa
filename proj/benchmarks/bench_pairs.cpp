#include <benchmark/benchmark.h>

#include "common.hpp"

using namespace taustat;

namespace {

void BM_PairTable(benchmark::State& state) {
    const auto cases = bench::outbreak(std::size_t(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(build_pair_table(cases, bench::window()));
    state.SetItemsProcessed(state.iterations() * state.range(0) * (state.range(0) - 1));
}
BENCHMARK(BM_PairTable)->Arg(188)->Arg(500)->Arg(1000);

void BM_BandCountsDirect(benchmark::State& state) {
    const auto cases = bench::outbreak(std::size_t(state.range(0)));
    const auto table = build_pair_table(cases, bench::window());
    const auto bands = DistanceBandSet::overlapping();
    for (auto _ : state) benchmark::DoNotOptimize(band_counts(table, bands));
}
BENCHMARK(BM_BandCountsDirect)->Arg(188)->Arg(500);

void BM_BandCountsIndexed(benchmark::State& state) {
    const auto cases = bench::outbreak(std::size_t(state.range(0)));
    const auto table = build_pair_table(cases, bench::window());
    const BandIndex index(table, DistanceBandSet::overlapping());
    for (auto _ : state) benchmark::DoNotOptimize(band_counts(table, index));
}
BENCHMARK(BM_BandCountsIndexed)->Arg(188)->Arg(500)->Arg(1000);

void BM_TauPointEstimate(benchmark::State& state) {
    const auto cases = bench::outbreak(188);
    const auto bands = DistanceBandSet::overlapping();
    for (auto _ : state) benchmark::DoNotOptimize(tau_point_estimate(cases, bench::window(), bands));
}
BENCHMARK(BM_TauPointEstimate);

}  // namespace
