#include <benchmark/benchmark.h>

#include "common.hpp"

using namespace taustat;

namespace {

void BM_Bootstrap(benchmark::State& state) {
    const auto cases = bench::outbreak(188);
    const auto bands = DistanceBandSet::overlapping();
    const auto method = static_cast<BootstrapMethod>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_bootstrap(cases, bench::window(), bands, method, 100, RngPolicy{1}, 1));
    }
    state.SetItemsProcessed(state.iterations() * 100);
    state.SetLabel(std::string(to_string(method)));
}
BENCHMARK(BM_Bootstrap)
    ->Arg(int(BootstrapMethod::Risb))
    ->Arg(int(BootstrapMethod::Mmpsb))
    ->Arg(int(BootstrapMethod::Mpsb))
    ->Unit(benchmark::kMillisecond);

void BM_BootstrapThreads(benchmark::State& state) {
    const auto cases = bench::outbreak(188);
    const auto bands = DistanceBandSet::overlapping();
    const auto threads = unsigned(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            run_bootstrap(cases, bench::window(), bands, BootstrapMethod::Mmpsb, 2500, RngPolicy{1}, threads));
    }
    state.SetItemsProcessed(state.iterations() * 2500);
}
BENCHMARK(BM_BootstrapThreads)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_NullSimulation(benchmark::State& state) {
    const auto cases = bench::outbreak(188);
    const auto bands = DistanceBandSet::overlapping();
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_null(cases, bench::window(), bands, 100, RngPolicy{1}, 1));
    }
    state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_NullSimulation)->Unit(benchmark::kMillisecond);

void BM_ExtremeRankEnvelope(benchmark::State& state) {
    const auto cases = bench::outbreak(188);
    const auto bands = DistanceBandSet::overlapping();
    const auto observed = tau_point_estimate(cases, bench::window(), bands);
    const auto sims = simulate_null(cases, bench::window(), bands, std::size_t(state.range(0)), RngPolicy{1});
    for (auto _ : state) benchmark::DoNotOptimize(extreme_rank_envelope(observed, sims, 0.05));
}
BENCHMARK(BM_ExtremeRankEnvelope)->Arg(999)->Arg(2499)->Unit(benchmark::kMillisecond);

}  // namespace
