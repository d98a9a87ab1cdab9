#include <benchmark/benchmark.h>

#include <numeric>

#include "spt/kernels.hpp"
#include "spt/simulate.hpp"

using namespace spt;

namespace {

SimConfig null_config(std::size_t n) {
    SimConfig c;
    c.n_stocks = n;
    c.n_periods = 120;
    c.gamma.assign(n, 0.0);
    c.xi = 0.3 * Eigen::MatrixXd::Identity(Eigen::Index(n), Eigen::Index(n));
    c.initial_caps.assign(n, 1.0);
    c.initial_cap_dispersion = 1.0;
    c.seed = 7;
    return c;
}

const MarketPanel& synthetic_panel() {
    static const MarketPanel panel = simulate(null_config(250));
    return panel;
}

std::vector<std::size_t> all_boundaries() {
    std::vector<std::size_t> b(200);
    std::iota(b.begin(), b.end(), 1);
    return b;
}

void BM_NullTrialsSerial(benchmark::State& state) {
    const auto c = null_config(20);
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::null_trial_spreads_serial(c, 10, 120, std::size_t(state.range(0))));
}

void BM_NullTrialsParallel(benchmark::State& state) {
    const auto c = null_config(20);
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::null_trial_spreads_parallel(c, 10, 120, std::size_t(state.range(0))));
}

void BM_LocalTimeProfileSerial(benchmark::State& state) {
    const auto& panel = synthetic_panel();
    const auto b = all_boundaries();
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::localtime_profile_serial(panel, b, LocalTimeMethod::portfolio_integration));
}

void BM_LocalTimeProfileParallel(benchmark::State& state) {
    const auto& panel = synthetic_panel();
    const auto b = all_boundaries();
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::localtime_profile_parallel(panel, b, LocalTimeMethod::portfolio_integration));
}

void BM_DecomposeAllSerial(benchmark::State& state) {
    const auto& panel = synthetic_panel();
    for (auto _ : state) benchmark::DoNotOptimize(kernels::decompose_all_serial(panel));
}

void BM_DecomposeAllParallel(benchmark::State& state) {
    const auto& panel = synthetic_panel();
    for (auto _ : state) benchmark::DoNotOptimize(kernels::decompose_all_parallel(panel));
}

}  // namespace

BENCHMARK(BM_NullTrialsSerial)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NullTrialsParallel)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LocalTimeProfileSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LocalTimeProfileParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DecomposeAllSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DecomposeAllParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
