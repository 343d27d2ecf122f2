// Serial reference loops against the OpenMP kernels on the same inputs.
// Arg 0 = serial, 1 = parallel.
#include <benchmark/benchmark.h>

#include <random>

#include "nlca/cohomology.hpp"
#include "nlca/fixtures.hpp"
#include "nlca/homotopy.hpp"
#include "nlca/parallel.hpp"

using namespace nlca;
namespace fx = nlca::fixtures;

namespace {

// rank-6 algebra: Csl2 (+) Csl2 with the adjoint action
NijenhuisLCA big() {
  auto sl = NijenhuisLCA::make(fx::current_sl2(), fx::borel_projector());
  return crossed_direct_sum(adjoint_crossed_module(sl));
}

void mode(benchmark::State& st) {
  set_parallel(st.range(0) == 1);
  st.SetLabel(st.range(0) ? "openmp" : "serial");
}

void BM_check_lca(benchmark::State& st) {
  auto n = big();
  mode(st);
  for (auto _ : st) benchmark::DoNotOptimize(check_lca(n.algebra));
  set_parallel(false);
}

void BM_check_nijenhuis(benchmark::State& st) {
  auto n = big();
  mode(st);
  for (auto _ : st) benchmark::DoNotOptimize(check_nijenhuis(n.algebra, n.N));
  set_parallel(false);
}

void BM_delta_degree3(benchmark::State& st) {
  auto n = big();
  auto ad = RepTable::adjoint(n.algebra);
  std::mt19937_64 rng(1);
  Cochain f = random_cochain(2, n.algebra.module, n.algebra.module, 2, rng);
  mode(st);
  for (auto _ : st) benchmark::DoNotOptimize(apply_delta(f, ad));
  set_parallel(false);
}

void BM_truncated_h2(benchmark::State& st) {
  auto sl = NijenhuisLCA::make(fx::current_sl2(), fx::borel_projector());
  auto cx = dn_complex(sl, NijenhuisRep::adjoint(sl));
  mode(st);
  for (auto _ : st) benchmark::DoNotOptimize(solve_truncated(cx, 1, 2));
  set_parallel(false);
}

}  // namespace

BENCHMARK(BM_check_lca)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_check_nijenhuis)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_delta_degree3)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_truncated_h2)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
