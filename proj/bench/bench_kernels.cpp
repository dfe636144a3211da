#include <benchmark/benchmark.h>

#include <cmath>

#include "fracscalar/diagnostics.hpp"
#include "fracscalar/evolution.hpp"
#include "fracscalar/experiments.hpp"
#include "fracscalar/kernel_quadrature.hpp"

using namespace fracscalar;

namespace {

RealField field(int n) {
  RealField u = random_band_limited(TorusGrid(n), 7, 4);
  u += 1.0 - u.min();
  return u;
}

Execution mode(const benchmark::State& st) {
  return st.range(1) ? Execution::parallel : Execution::serial;
}

void BM_LambdaQuadrature(benchmark::State& st) {
  const RealField u = field(static_cast<int>(st.range(0)));
  KernelTruncation t;
  t.lattice_radius = 10;
  for (auto _ : st) benchmark::DoNotOptimize(lambda_pow_quadrature(u, 1.0, t, mode(st)));
}

void BM_RieszQuadrature(benchmark::State& st) {
  const RealField u = field(static_cast<int>(st.range(0)));
  KernelTruncation t;
  t.lattice_radius = 10;
  for (auto _ : st) benchmark::DoNotOptimize(riesz_quadrature(u, 1, t, mode(st)));
}

void BM_Wsp(benchmark::State& st) {
  const RealField u = field(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(wsp_seminorm(u, 0.4, 1.5, mode(st)));
}

void BM_HolderProbe(benchmark::State& st) {
  const RealField u = field(static_cast<int>(st.range(0)));
  MaxPrincipleOptions o;
  o.exec = mode(st);
  for (auto _ : st) benchmark::DoNotOptimize(max_principle_probe(u, 1.0, 4.0 / 3.0, o));
}

void BM_NonlinearRhs(benchmark::State& st) {
  const RealField u = field(static_cast<int>(st.range(0)));
  ModelParams p;
  p.r = 0.5;
  for (auto _ : st) benchmark::DoNotOptimize(nonlinear_rhs(u, p));
}

void BM_Step(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  ModelParams p;
  p.r = 0.5;
  StepperConfig c;
  c.dt = 1e-3;
  Stepper stepper(TorusGrid(n), p, c);
  State s{0.0, field(n)};
  for (auto _ : st) s = stepper.advance(s, c.dt);
}

}  // namespace

BENCHMARK(BM_LambdaQuadrature)->ArgsProduct({{16, 32}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RieszQuadrature)->ArgsProduct({{16, 32}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Wsp)->ArgsProduct({{16, 32}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HolderProbe)->ArgsProduct({{16, 32}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NonlinearRhs)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Step)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
