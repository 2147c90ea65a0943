#include <benchmark/benchmark.h>

#include "gmrf/fisher_geometry.hpp"
#include "gmrf/oracle.hpp"
#include "gmrf/patch_stats.hpp"
#include "gmrf/sampler.hpp"

using namespace gmrf;

namespace {

void BM_PatchCovariance(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const Lattice lattice = init_lattice(side, {0.0, 1.0, 0.0}, 1);
  for (auto _ : state) benchmark::DoNotOptimize(patch_covariance(lattice));
  state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_PatchCovariance)->Arg(64)->Arg(128)->Arg(256);

void BM_Sweep(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  Lattice lattice = init_lattice(side, {0.0, 1.0, 0.0}, 2);
  SamplerConfig config;
  config.mode = state.range(1) == 0 ? SamplerMode::gibbs : SamplerMode::random_walk_mh;
  config.support_sds = 3.0;
  Rng rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(metropolis_sweep(lattice, {0.0, 1.0, 0.12}, config, rng));
  state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_Sweep)->Args({128, 0})->Args({128, 1})->Args({256, 0});

PatchCovariance bench_covariance() {
  return oracle::random_patch_model(7).patch_covariance();
}

void BM_FormsNested(benchmark::State& state) {
  const PatchCovariance cov = bench_covariance();
  const ModelParams p{0.0, cov.sigma_sq_center, 0.15};
  for (auto _ : state) {
    benchmark::DoNotOptimize(first_form_nested(cov, p));
    benchmark::DoNotOptimize(second_form_nested(cov, p));
  }
}
BENCHMARK(BM_FormsNested);

void BM_FormsTensorial(benchmark::State& state) {
  const PatchCovariance cov = bench_covariance();
  const ModelParams p{0.0, cov.sigma_sq_center, 0.15};
  for (auto _ : state) {
    benchmark::DoNotOptimize(first_form_tensorial(cov, p));
    benchmark::DoNotOptimize(second_form_tensorial(cov, p));
  }
}
BENCHMARK(BM_FormsTensorial);

void BM_Curvatures(benchmark::State& state) {
  const PatchCovariance cov = bench_covariance();
  const ModelParams p{0.0, cov.sigma_sq_center, 0.15};
  const FundamentalForms forms = fundamental_forms(cov, p);
  for (auto _ : state) benchmark::DoNotOptimize(curvatures(forms));
}
BENCHMARK(BM_Curvatures);

}  // namespace
BENCHMARK_MAIN();
