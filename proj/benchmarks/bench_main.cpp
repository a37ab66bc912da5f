#include "mollify/asymptotics.hpp"
#include "mollify/moments.hpp"
#include "mollify/optimize.hpp"
#include "mollify/oracle.hpp"

#include <benchmark/benchmark.h>

using namespace mollify;

namespace {

MollifierSpec row(int k) {
    const auto R = [](const char* s) { return Rational::parse(s); };
    switch (k) {
        case 0: return {1, 1, {R("1.05"), R("-0.05")}, {R("0.9")}};
        case 1: return {1, 1, {R("0.87"), 0, R("0.13")}, {R("0.15"), R("-0.11")}};
        case 2: return {1, 1, {R("0.75"), 0, R("0.25")}, {R("0.06"), R("-0.05")}};
        default: return {1, 1, {R("0.62"), 0, R("0.32"), 0, R("0.06")}, {R("0.03"), R("-0.04")}};
    }
}

void BM_Proportion(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    const MollifierSpec s = row(k);
    for (auto _ : state) benchmark::DoNotOptimize(proportion(s, k));
}
BENCHMARK(BM_Proportion)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_BuildModel(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(build_quadratic_model(d, d, 1, 1, 2));
}
BENCHMARK(BM_BuildModel)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

void BM_SolveRayleigh(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const QuadraticModel m = build_quadratic_model(d, d, 1, 1, 2);
    for (auto _ : state) benchmark::DoNotOptimize(solve_rayleigh(m));
}
BENCHMARK(BM_SolveRayleigh)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

void BM_OracleProportion(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    const MollifierSpec s = row(k);
    for (auto _ : state) benchmark::DoNotOptimize(oracle::oracle_proportion(s, k));
}
BENCHMARK(BM_OracleProportion)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_RankBound(benchmark::State& state) {
    std::vector<HighPrecision> ps;
    for (const char* p : {"0.3411", "0.7553", "0.9085", "0.9643"}) ps.emplace_back(p);
    const int K = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(rank_bound(1, ps, K));
}
BENCHMARK(BM_RankBound)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_ClosedForm(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(closed_form_p(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_ClosedForm)->Arg(4)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
