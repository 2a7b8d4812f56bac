#include "ipdsaw/ipdsaw.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_DpZSingleBead(benchmark::State& state)
{
    const int L = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(ipdsaw::dp_Z(L, 2.0, 1.2, ipdsaw::Variant::SingleBead, L).log_z);
    state.SetComplexityN(L);
}
BENCHMARK(BM_DpZSingleBead)->RangeMultiplier(2)->Range(50, 400)->Unit(benchmark::kMillisecond)->Complexity();

void BM_DpZFree(benchmark::State& state)
{
    const int L = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(ipdsaw::dp_Z(L, 2.0, 0.5, ipdsaw::Variant::Free, L).log_z);
}
BENCHMARK(BM_DpZFree)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_BackwardSample(benchmark::State& state)
{
    const auto dp = ipdsaw::dp_Z(200, 2.0, 1.2, ipdsaw::Variant::SingleBead, 200);
    ipdsaw::Rng rng(1);
    for (auto _ : state) benchmark::DoNotOptimize(ipdsaw::backward_sample(dp.table, 100, rng));
}
BENCHMARK(BM_BackwardSample)->Unit(benchmark::kMillisecond);

void BM_DCirc(benchmark::State& state)
{
    const int N = static_cast<int>(state.range(0));
    // Area 2qN^2 with q = 1/2.
    for (auto _ : state) benchmark::DoNotOptimize(ipdsaw::d_circ_area(N, N * N, 2.0, 0.5));
}
BENCHMARK(BM_DCirc)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_AreaWetting(benchmark::State& state)
{
    const int N = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(ipdsaw::e_n_gamma(N, 1.0, 2.0));
}
BENCHMARK(BM_AreaWetting)->Arg(256)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_ReturnKernel(benchmark::State& state)
{
    const int T = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(ipdsaw::return_kernel(2.0, T).survival);
}
BENCHMARK(BM_ReturnKernel)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_TiltInverse(benchmark::State& state)
{
    for (auto _ : state) benchmark::DoNotOptimize(ipdsaw::tilt_inverse(0.7, -0.3, 2.0));
}
BENCHMARK(BM_TiltInverse)->Unit(benchmark::kMicrosecond);

void BM_CollapseProfile(benchmark::State& state)
{
    for (auto _ : state) benchmark::DoNotOptimize(ipdsaw::collapse_profile(2.0, 1.2).phi_max);
}
BENCHMARK(BM_CollapseProfile)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
