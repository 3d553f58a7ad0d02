#include <benchmark/benchmark.h>

#include "mcq/blockcore.hpp"
#include "mcq/geometry.hpp"
#include "mcq/matrix.hpp"

using namespace mcq;

static void BM_DetBareiss(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  Mat A(n, Vec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      A[i][j] = make_rational((i * 7 + j * 3) % 11 - 5, 1 + (i + j) % 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(det_bareiss(A));
  }
}
BENCHMARK(BM_DetBareiss)->Arg(6)->Arg(10)->Arg(14);

static void BM_BuildBlock(benchmark::State& state) {
  int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_block(k));
  }
}
BENCHMARK(BM_BuildBlock)->Arg(2)->Arg(5)->Arg(7);

static void BM_VerifyStructural(benchmark::State& state) {
  int k = static_cast<int>(state.range(0));
  ModularBlock blk = build_block(k);
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_block(blk, VerifyLevel::Structural));
  }
}
BENCHMARK(BM_VerifyStructural)->Arg(2)->Arg(4);

static void BM_InteriorDisjoint(benchmark::State& state) {
  ModularBlock blk = build_block(static_cast<int>(state.range(0)));
  auto s1 = blk.simplex(blk.core[0]);
  auto s2 = blk.simplex(blk.core[1]);
  for (auto _ : state) {
    benchmark::DoNotOptimize(interiors_intersect(s1, s2));
  }
}
BENCHMARK(BM_InteriorDisjoint)->Arg(2)->Arg(4);

BENCHMARK_MAIN();
