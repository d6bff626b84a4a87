#include <benchmark/benchmark.h>

#include "spurious/dgp.hpp"
#include "spurious/limitdist.hpp"
#include "spurious/montecarlo.hpp"
#include "spurious/regress.hpp"
#include "spurious/rng.hpp"

namespace {

using namespace spurious;

McCell trend_cell(std::size_t T, int number, Estimator est) {
    McCell cell;
    cell.T = T;
    cell.replications = 200;
    cell.seed = 1;
    cell.dgp_y = DgpSpec::trend_stationary(1.0, 0.0, 0.9);
    cell.dgp_x = DgpSpec::trend_stationary(1.0, 0.0, 0.9);
    cell.regression.number = number;
    cell.estimator = est;
    return cell;
}

void BM_Normals(benchmark::State& state) {
    RngStream rng(0, 0);
    for (auto _ : state) benchmark::DoNotOptimize(rng.standard_normal());
}
BENCHMARK(BM_Normals);

void BM_OlsTrendRegression(benchmark::State& state) {
    const auto T = static_cast<std::size_t>(state.range(0));
    const auto [y, x] = replication_data(trend_cell(T, 2, Estimator::Ols), 1);
    RegressionSpec spec;
    spec.number = 2;
    for (auto _ : state) {
        const DesignMatrix X = build_design(spec, x, T);
        benchmark::DoNotOptimize(ols_fit(X, y));
    }
}
BENCHMARK(BM_OlsTrendRegression)->Arg(100)->Arg(1000)->Arg(10000);

void BM_Fgls(benchmark::State& state) {
    const auto T = static_cast<std::size_t>(state.range(0));
    const auto [y, x] = replication_data(trend_cell(T, 3, Estimator::Fgls), 1);
    RegressionSpec spec;
    spec.number = 3;
    const DesignMatrix X = build_design(spec, x, T);
    FglsOptions options;
    options.method = state.range(1) == 0 ? FglsMethod::TwoStep : FglsMethod::Iterated;
    for (auto _ : state) benchmark::DoNotOptimize(fgls_fit(X, y, options));
}
BENCHMARK(BM_Fgls)->ArgsProduct({{100, 1000}, {0, 1}});

void BM_RunCell(benchmark::State& state) {
    const McCell cell = trend_cell(100, static_cast<int>(state.range(0)),
                                   state.range(0) == 3 ? Estimator::Fgls : Estimator::Ols);
    for (auto _ : state) benchmark::DoNotOptimize(run_cell(cell));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cell.replications));
}
BENCHMARK(BM_RunCell)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_LimitDraw(benchmark::State& state) {
    RngStream rng(0, 0);
    const auto steps = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(limit_t_draw(rng, steps));
}
BENCHMARK(BM_LimitDraw)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
