#include <benchmark/benchmark.h>

#include "taulehmer/arith.hpp"
#include "taulehmer/curves.hpp"
#include "taulehmer/lehmer.hpp"
#include "taulehmer/lucas.hpp"
#include "taulehmer/newform.hpp"
#include "taulehmer/thue.hpp"

using namespace tl;

static void BM_DeltaExpansion(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(delta_expansion(static_cast<unsigned long>(st.range(0))));
}
BENCHMARK(BM_DeltaExpansion)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_CoeffPrimePower(benchmark::State& st) {
  const auto& D = delta_spec();
  for (auto _ : st) benchmark::DoNotOptimize(coeff_prime_power(D, Int(251), static_cast<unsigned long>(st.range(0))));
}
BENCHMARK(BM_CoeffPrimePower)->Arg(2)->Arg(20);

static void BM_Factor(benchmark::State& st) {
  const auto v = coeff_prime_power(delta_spec(), Int(251), 2);
  for (auto _ : st) benchmark::DoNotOptimize(factor(v));
}
BENCHMARK(BM_Factor)->Unit(benchmark::kMillisecond);

static void BM_ClassifyDefects(benchmark::State& st) {
  const LucasPair p = make_pair(Int(1), Int(2));
  for (auto _ : st) benchmark::DoNotOptimize(classify_defects(p));
}
BENCHMARK(BM_ClassifyDefects);

static void BM_ThueSolve(benchmark::State& st) {
  const ThueForm f = build_form(3);
  const auto x_mid = static_cast<unsigned long>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(solve_bounded(f, Int(13), 100, x_mid));
}
BENCHMARK(BM_ThueSolve)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_CurveSearch(benchmark::State& st) {
  const CurveSpec c = curve_C(2, Int(17), 1);
  const auto x_max = static_cast<unsigned long>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(search_points(c, x_max));
}
BENCHMARK(BM_CurveSearch)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_Admissibility(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(check_admissibility(delta_spec(), 691, 1, -1));
}
BENCHMARK(BM_Admissibility)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK_MAIN();
