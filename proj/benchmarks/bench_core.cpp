// Microbenchmarks for the hot paths: mesh construction, the bracket norm,
// quasi-integration and the direct median oracle.

#include <benchmark/benchmark.h>

#include <random>

#include "pbsharp/constructions.hpp"
#include "pbsharp/mesh.hpp"
#include "pbsharp/poisson.hpp"
#include "pbsharp/quasimeasure.hpp"
#include "pbsharp/quasistate.hpp"
#include "pbsharp/random_fields.hpp"

namespace {

using namespace pbsharp;

const Theorem1Construction& shared_construction(int level) {
  static const Theorem1Construction c4 = theorem1_fields({.level = 4});
  static const Theorem1Construction c5 = theorem1_fields({.level = 5});
  return level == 4 ? c4 : c5;
}

void BM_BuildIcosphere(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(theorem1_fields({.level = level}));
  }
}
BENCHMARK(BM_BuildIcosphere)->Arg(3)->Arg(4)->Arg(5);

void BM_PoissonL1(benchmark::State& state) {
  const auto& c = shared_construction(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(poisson_l1(c.mesh, c.f, c.g).l1_norm);
  }
}
BENCHMARK(BM_PoissonL1)->Arg(4)->Arg(5);

void BM_QuasiIntegral(benchmark::State& state) {
  const auto& c = shared_construction(static_cast<int>(state.range(0)));
  QuasiState qs{QuasiMeasure{SolidSetFunction::three_point(c.mesh)}};
  std::mt19937_64 rng(7);
  ScalarField f = random_smooth_field(c.mesh, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qs.quasi_integral(f));
  }
}
BENCHMARK(BM_QuasiIntegral)->Arg(4)->Arg(5);

void BM_TauOpen(benchmark::State& state) {
  const auto& c = shared_construction(4);
  QuasiMeasure qm{SolidSetFunction::three_point(c.mesh)};
  std::vector<int> lower_half;
  for (int v = 0; v < c.mesh.vertex_count(); ++v) {
    if (c.mesh.vertices()[v][2] < 0.0) lower_half.push_back(v);
  }
  VertexSet u = make_vertex_set(c.mesh, lower_half, SetKind::open);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qm.tau_open(u));
  }
}
BENCHMARK(BM_TauOpen);

void BM_MedianDirect(benchmark::State& state) {
  const auto& c = shared_construction(4);
  std::mt19937_64 rng(11);
  ScalarField f = random_smooth_field(c.mesh, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(median_direct(c.mesh, f));
  }
}
BENCHMARK(BM_MedianDirect);

}  // namespace

BENCHMARK_MAIN();
