// Serial reference scans against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <cmath>

#include "bifun/oracle.hpp"

using namespace bifun;
using namespace bifun::oracle;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void label(benchmark::State& state) { state.SetLabel(state.range(0) == 0 ? "serial" : "openmp"); }

void BM_Legendre1d(benchmark::State& state) {
  const GridSpec grid = GridSpec::uniform(1, -5.0, 5.0, 2001);
  const SampledFunction f = sample([](const Vector& x) { return std::abs(x(0)); }, grid);
  const GridSpec dual = GridSpec::uniform(1, -2.0, 2.0, 401);
  for (auto _ : state) benchmark::DoNotOptimize(numeric_legendre(f, dual, mode(state)));
  label(state);
}

void BM_InfConvolution2d(benchmark::State& state) {
  const GridSpec grid = GridSpec::uniform(2, -4.0, 4.0, 41);
  const SampledFunction f = sample([](const Vector& x) { return 0.5 * x.squaredNorm(); }, grid);
  for (auto _ : state) benchmark::DoNotOptimize(numeric_inf_convolution(f, f, mode(state)));
  label(state);
}

void BM_LogConvolution(benchmark::State& state) {
  const GridSpec grid = GridSpec::uniform(1, -10.0, 10.0, 2001);
  const SampledFunction h = sample([](const Vector& x) { return -0.5 * x(0) * x(0); }, grid);
  for (auto _ : state) benchmark::DoNotOptimize(quadrature_log_convolution(h, h, mode(state)));
  label(state);
}

void BM_PartialInfimum3d(benchmark::State& state) {
  const GridSpec grid = GridSpec::uniform(3, -2.0, 2.0, 61);
  const SampledFunction f = sample([](const Vector& x) { return x.squaredNorm() + x(0) * x(2); }, grid);
  for (auto _ : state) benchmark::DoNotOptimize(grid_partial_infimum(f, 1, mode(state)));
  label(state);
}

}  // namespace

BENCHMARK(BM_Legendre1d)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InfConvolution2d)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LogConvolution)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PartialInfimum3d)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
