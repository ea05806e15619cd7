#include <benchmark/benchmark.h>

#include "torus/series.hpp"
#include "torus/spectrum.hpp"

namespace {

torus::SurfacePoint hexagonal() { return torus::make_surface_point(3.0, 3.0, 0.0); }

void BM_EnumerateGeodesics(benchmark::State& state) {
  const auto pt = hexagonal();
  const double cutoff = static_cast<double>(state.range(0));
  std::size_t n = 0;
  for (auto _ : state) {
    auto records = torus::enumerate_geodesics(pt, cutoff);
    n = records.size();
    benchmark::DoNotOptimize(records);
  }
  state.counters["records"] = static_cast<double>(n);
}
BENCHMARK(BM_EnumerateGeodesics)->Arg(10)->Arg(20)->Arg(30)->Arg(40);

void BM_EnumerateThreaded(benchmark::State& state) {
  const auto pt = hexagonal();
  for (auto _ : state) {
    auto records = torus::enumerate_geodesics(pt, 40.0, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(records);
  }
}
BENCHMARK(BM_EnumerateThreaded)->Arg(1)->Arg(2)->Arg(4);

void BM_TraceOfSlope(benchmark::State& state) {
  const auto pt = hexagonal();
  // consecutive Fibonacci numbers make the longest Stern-Brocot path per size
  const torus::Slope deep{static_cast<std::int64_t>(state.range(0)),
                          static_cast<std::int64_t>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(torus::trace_of_slope(pt, deep));
}
BENCHMARK(BM_TraceOfSlope)->Args({34, 55})->Args({233, 144});

void BM_FrickeOracle(benchmark::State& state) {
  const auto pt = hexagonal();
  const torus::Slope deep{34, 55};
  for (auto _ : state) benchmark::DoNotOptimize(torus::fricke_oracle(pt, deep));
}
BENCHMARK(BM_FrickeOracle);

void BM_ArctanSum(benchmark::State& state) {
  const auto pt = torus::make_surface_point(3.2, 3.2, 1.0);
  for (auto _ : state) {
    auto report = torus::arctan_sum(pt, static_cast<double>(state.range(0)));
    benchmark::DoNotOptimize(report);
  }
}
BENCHMARK(BM_ArctanSum)->Arg(20)->Arg(40);

void BM_VariationSum(benchmark::State& state) {
  const auto pt = hexagonal();
  for (auto _ : state) {
    auto report = torus::variation_sum(pt, torus::Slope{0, 1}, 20.0);
    benchmark::DoNotOptimize(report);
  }
}
BENCHMARK(BM_VariationSum);

}  // namespace

BENCHMARK_MAIN();
