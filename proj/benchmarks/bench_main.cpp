#include <benchmark/benchmark.h>

#include "qgx/classical.hpp"
#include "qgx/idealcheck.hpp"

using namespace qgx;

namespace {

Series series_of(const benchmark::State& state) {
  return Series::make(static_cast<SeriesTag>(state.range(0)), static_cast<int>(state.range(1)));
}

void BM_BuildR(benchmark::State& state) {
  const Series s = series_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(build_R(s));
}
BENCHMARK(BM_BuildR)
    ->Args({static_cast<int>(SeriesTag::C), 4})
    ->Args({static_cast<int>(SeriesTag::C), 6})
    ->Args({static_cast<int>(SeriesTag::D), 6})
    ->Unit(benchmark::kMicrosecond);

void BM_BraidCheck(benchmark::State& state) {
  const RTensor Rh = rhat(build_R(series_of(state)));
  for (auto _ : state) benchmark::DoNotOptimize(braid_check(Rh));
}
BENCHMARK(BM_BraidCheck)
    ->Args({static_cast<int>(SeriesTag::A), 3})
    ->Args({static_cast<int>(SeriesTag::C), 4})
    ->Args({static_cast<int>(SeriesTag::B), 5})
    ->Unit(benchmark::kMillisecond);

void BM_FrtRelations(benchmark::State& state) {
  const RTensor Rh = rhat(build_R(series_of(state)));
  for (auto _ : state) benchmark::DoNotOptimize(frt_relations(Rh));
}
BENCHMARK(BM_FrtRelations)->Args({static_cast<int>(SeriesTag::C), 4})->Unit(benchmark::kMillisecond);

void BM_CentralityDegree3(benchmark::State& state) {
  const Series s = series_of(state);
  const Presentation p = build_presentation(s, Variant::Plain);
  const std::vector<NCPoly> frt(p.relations.begin(), p.relations.begin() + static_cast<std::ptrdiff_t>(p.frt_count));
  const NCPoly target = commutator(*p.qelt, NCPoly::gen(1, 2, s.N));
  for (auto _ : state) {
    SessionOptions so;
    so.degree_bound = 3;
    so.grading = Grading::for_series(s);
    IdealSession session(frt, s.N, so);
    benchmark::DoNotOptimize(session.contains(target));
  }
}
BENCHMARK(BM_CentralityDegree3)
    ->Args({static_cast<int>(SeriesTag::C), 2})
    ->Args({static_cast<int>(SeriesTag::B), 3})
    ->Unit(benchmark::kMillisecond);

void BM_ClassicalSweep(benchmark::State& state) {
  classical::SweepOptions o;
  o.trials = 100;
  o.closure = true;
  for (auto _ : state)
    benchmark::DoNotOptimize(classical::sweep(classical::Group::SOT, static_cast<int>(state.range(0)), o));
}
BENCHMARK(BM_ClassicalSweep)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
