#include <benchmark/benchmark.h>

#include <vector>

#include "probespec/floquet.hpp"
#include "probespec/scan.hpp"
#include "probespec/system.hpp"

using namespace probespec;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> g;
    for (int i = 0; i < n; ++i) g.push_back(lo + (hi - lo) * i / (n - 1));
    return g;
}

const TransitionSystem& system_21() {
    static const TransitionSystem sys =
        build_system(2, 1, 1.0, 1.0, 0.0, ProbeGeometry{kPi / 2});
    return sys;
}

const TransitionSystem& system_22() {
    static const TransitionSystem sys =
        build_system(2, 2, 2.0, 1.0, 0.0, ProbeGeometry{kPi / 2});
    return sys;
}

}  // namespace

static void BM_SerialScan21(benchmark::State& state) {
    const auto grid = linspace(-2.0, 2.0, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto spec = oracle_spectrum(system_21(), 0.05, grid);
        benchmark::DoNotOptimize(spec.trace.absorption.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SerialScan21)->Arg(9)->Arg(33)->Unit(benchmark::kMillisecond);

static void BM_ParallelScan21(benchmark::State& state) {
    const auto grid = linspace(-2.0, 2.0, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto spec = parallel_spectrum(system_21(), 0.05, grid);
        benchmark::DoNotOptimize(spec.trace.absorption.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ParallelScan21)->Arg(9)->Arg(33)->Unit(benchmark::kMillisecond);

static void BM_SerialScan22(benchmark::State& state) {
    const auto grid = linspace(-1.5, 1.5, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto spec = oracle_spectrum(system_22(), 0.05, grid);
        benchmark::DoNotOptimize(spec.trace.absorption.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SerialScan22)->Arg(17)->Unit(benchmark::kMillisecond);

static void BM_ParallelScan22(benchmark::State& state) {
    const auto grid = linspace(-1.5, 1.5, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto spec = parallel_spectrum(system_22(), 0.05, grid);
        benchmark::DoNotOptimize(spec.trace.absorption.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ParallelScan22)->Arg(17)->Unit(benchmark::kMillisecond);

static void BM_SinglePointVsCutoff(benchmark::State& state) {
    const int K = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto sol = floquet_solve(system_21(), 0.05, 0.45, K);
        benchmark::DoNotOptimize(sol.harmonics.data());
    }
}
BENCHMARK(BM_SinglePointVsCutoff)->Arg(4)->Arg(8)->Arg(16);

BENCHMARK_MAIN();
