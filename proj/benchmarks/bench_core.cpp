#include <benchmark/benchmark.h>

#include "fpdioph/char_sums.hpp"
#include "fpdioph/curve_count.hpp"
#include "fpdioph/ff_core.hpp"
#include "fpdioph/tuples.hpp"

namespace {

using namespace fpdioph;

void BM_CountTriples(benchmark::State& state) {
  const auto f = make_field(state.range(0));
  RunOptions opts;
  opts.verify = Verify::kOff;
  for (auto _ : state) benchmark::DoNotOptimize(count(3, 3, f, opts).brute_count);
}
BENCHMARK(BM_CountTriples)->Arg(101)->Arg(229)->Arg(499)->Unit(benchmark::kMillisecond);

void BM_EnumerateQuadruples(benchmark::State& state) {
  const auto f = make_field(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate(3, 4, f).size());
}
BENCHMARK(BM_EnumerateQuadruples)->Arg(23)->Arg(61)->Arg(101)->Unit(benchmark::kMillisecond);

void BM_LegendreEuler(benchmark::State& state) {
  const auto f = make_field(1'000'003);
  std::int64_t a = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.legendre(a));
    a = a * 48271 % 1'000'003;
  }
}
BENCHMARK(BM_LegendreEuler);

void BM_TableLookup(benchmark::State& state) {
  const auto f = make_field(1'000'003);
  Residue a = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.eta(a));
    a = a * 48271 % 1'000'003;
  }
}
BENCHMARK(BM_TableLookup);

void BM_PointCount(benchmark::State& state) {
  const auto f = make_field(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(brute_point_count(3, f));
}
BENCHMARK(BM_PointCount)->Arg(997)->Arg(100'003);

void BM_MakeField(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(make_field(state.range(0)).square_count());
}
BENCHMARK(BM_MakeField)->Arg(100'003)->Arg(10'000'019)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
