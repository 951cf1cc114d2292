#include <benchmark/benchmark.h>

#include "mprp/experiments.hpp"
#include "mprp/generator.hpp"
#include "mprp/oracle.hpp"
#include "mprp/solver.hpp"

namespace {

mprp::Instance default_instance(int n, int m) {
    mprp::GenParams p;
    p.n = n;
    p.m = m;
    p.capacity = static_cast<double>(n) * p.horizon;  // in-regime
    p.seed = 1;
    return mprp::generate(p);
}

void BM_Generate(benchmark::State& state) {
    mprp::GenParams p;
    p.n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        p.seed++;
        benchmark::DoNotOptimize(mprp::generate(p));
    }
}
BENCHMARK(BM_Generate)->Arg(100)->Arg(1000)->Arg(10000);

void BM_Solve(benchmark::State& state) {
    const auto instance =
        default_instance(static_cast<int>(state.range(0)), 5);
    std::uint64_t seed = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(mprp::solve(instance, seed++));
}
BENCHMARK(BM_Solve)->Arg(50)->Arg(200)->Arg(1000);

void BM_SolveDenseWorkload(benchmark::State& state) {
    const auto instance = mprp::runtime_workload_instance(
        static_cast<int>(state.range(0)), 5, 3);
    std::uint64_t seed = 0;
    mprp::SolverConfig config;
    config.frozen_denominator = state.range(1) != 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(mprp::solve(instance, seed++, config));
}
BENCHMARK(BM_SolveDenseWorkload)
    ->Args({250, 0})
    ->Args({1000, 0})
    ->Args({250, 1})
    ->Args({1000, 1});

void BM_BestSingleRoute(benchmark::State& state) {
    const auto instance =
        default_instance(static_cast<int>(state.range(0)), 1);
    std::vector<int> all;
    for (int id = 0; id < instance.site_count(); ++id) all.push_back(id);
    for (auto _ : state)
        benchmark::DoNotOptimize(mprp::best_single_route(instance, all));
}
BENCHMARK(BM_BestSingleRoute)->Arg(8)->Arg(10)->Arg(12);

}  // namespace

BENCHMARK_MAIN();
