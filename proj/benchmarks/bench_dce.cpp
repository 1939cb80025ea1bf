#include "dce/estimator.hpp"
#include "dce/figures.hpp"
#include "dce/indicators.hpp"
#include "dce/scattering.hpp"
#include "dce/sweep.hpp"

#include <benchmark/benchmark.h>

namespace {

dce::CircuitConfig config(double eps) {
    dce::CircuitConfig c;
    c.epsilon = eps;
    return c;
}

void BM_LadderFixed(benchmark::State& state) {
    const auto c = config(0.3);
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(dce::solve_ladder(c, 0.35 * c.drive_angular_frequency, n));
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_LadderFixed)->RangeMultiplier(4)->Range(4, 1024)->Complexity(benchmark::oN);

void BM_ScatteringAdaptive(benchmark::State& state) {
    const auto c = config(static_cast<double>(state.range(0)) / 10.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dce::solve_scattering(c, 0.35 * c.drive_angular_frequency));
    }
}
BENCHMARK(BM_ScatteringAdaptive)->DenseRange(1, 6, 1);

void BM_EvaluatePoint(benchmark::State& state) {
    const auto c = config(0.3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dce::evaluate_point(c, 0.15, dce::Method::numeric));
    }
}
BENCHMARK(BM_EvaluatePoint);

void BM_Indicators(benchmark::State& state) {
    const auto c = config(0.3);
    const auto pair = dce::mode_pair_from_fraction(c.drive_angular_frequency, 0.15);
    const auto v = dce::evaluate_point(c, 0.15, dce::Method::numeric).covariance;
    for (auto _ : state) {
        benchmark::DoNotOptimize(dce::evaluate_indicators(v, pair));
    }
}
BENCHMARK(BM_Indicators);

void BM_Bootstrap(benchmark::State& state) {
    const auto c = config(0.3);
    const auto pair = dce::mode_pair_from_fraction(c.drive_angular_frequency, 0.15);
    const auto v = dce::evaluate_point(c, 0.15, dce::Method::numeric).covariance;
    const auto records = dce::sample_quadratures(v, static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dce::bootstrap_indicators(records, pair, 100, 7));
    }
    state.SetItemsProcessed(state.iterations() * 100 * state.range(0));
}
BENCHMARK(BM_Bootstrap)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_Fig3Map(benchmark::State& state) {
    dce::FigureOptions opt;
    opt.map_points = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(dce::reproduce_figure("fig3", opt));
    }
}
BENCHMARK(BM_Fig3Map)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
