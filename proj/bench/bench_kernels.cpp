#include "tvs/kernels.hpp"
#include "tvs/selection.hpp"
#include "tvs/tvar.hpp"

#include <benchmark/benchmark.h>
#include <omp.h>

namespace {

struct Setup {
    tvs::Series x;
    tvs::GridRequest request;
};

Setup make_setup(long n)
{
    const tvs::SelectionConfig c = tvs::SelectionConfig::defaults_for(n);
    const long T = n - c.m;
    Setup s{tvs::simulate_tvar(tvs::catalog::get("periodic1"), static_cast<std::size_t>(T), 1), {}};
    s.request.targets = tvs::split_segments(T, c.m).m1;
    s.request.h_min = 1;
    s.request.h_max = c.max_horizon;
    s.request.p_min = 0;
    s.request.p_max = c.p_max;
    s.request.windows = c.windows;
    return s;
}

void BM_grid_reference(benchmark::State& state)
{
    const Setup s = make_setup(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(tvs::grid_sse_reference(s.x, s.request));
}

void BM_grid_table(benchmark::State& state)
{
    const Setup s = make_setup(state.range(0));
    omp_set_num_threads(static_cast<int>(state.range(1)));
    for (auto _ : state) {
        const tvs::AcovTable table(s.x, s.request.p_max);
        benchmark::DoNotOptimize(tvs::grid_sse(table, s.request));
    }
}

} // namespace

BENCHMARK(BM_grid_reference)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_grid_table)
    ->Args({500, 1})
    ->Args({2000, 1})
    ->Args({10000, 1})
    ->Args({10000, 4})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

BENCHMARK_MAIN();
