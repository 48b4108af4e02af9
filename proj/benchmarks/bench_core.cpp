// Microbenchmarks for the hot paths: row reduction (generic vs packed),
// Grassmannian enumeration, validity checking, the greedy search step, and
// the big-integer binomials used by the bound formulas.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "grasscov/bounds.hpp"
#include "grasscov/codes.hpp"
#include "grasscov/gfq.hpp"
#include "grasscov/grassmann.hpp"
#include "grasscov/search.hpp"

using namespace grasscov;

namespace {

std::vector<MatrixFq> random_matrices(int q, int rows, int cols, int count) {
  FieldCtx F = make_field(q);
  std::mt19937_64 rng(42);
  std::vector<MatrixFq> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    MatrixFq m(F, rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) m.set(r, c, static_cast<Fq>(rng() % q));
    out.push_back(m);
  }
  return out;
}

void BM_RrefGeneric(benchmark::State& state) {
  int q = static_cast<int>(state.range(0));
  auto mats = random_matrices(q, 6, 12, 64);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rref(mats[i++ & 63]).rank);
  }
}
BENCHMARK(BM_RrefGeneric)->Arg(2)->Arg(3)->Arg(9);

void BM_RrefPackedF2(benchmark::State& state) {
  auto mats = random_matrices(2, 6, 12, 64);
  std::vector<PackedMatF2> packed;
  for (const auto& m : mats) packed.push_back(PackedMatF2::from_matrix(m));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rref(packed[i++ & 63]).rank);
  }
}
BENCHMARK(BM_RrefPackedF2);

void BM_FieldMul(benchmark::State& state) {
  FieldCtx F = make_field(static_cast<int>(state.range(0)));
  int q = F.q();
  Fq acc = 1;
  for (auto _ : state) {
    for (Fq a = 1; a < q; ++a) acc = F.mul(acc, a);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_FieldMul)->Arg(4)->Arg(8)->Arg(9);

void BM_Enumerate(benchmark::State& state) {
  FieldCtx F = make_field(2);
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto all = enumerate_grassmannian(F, n, 2);
    benchmark::DoNotOptimize(all.size());
  }
}
BENCHMARK(BM_Enumerate)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_CheckCovering(benchmark::State& state) {
  FieldCtx F = make_field(2);
  GrassCode code(F, 5, 2);
  for (const auto& w : enumerate_grassmannian(F, 5, 2)) code.add(w);
  for (auto _ : state) {
    // valid instance: no early witness, the scan visits every support
    benchmark::DoNotOptimize(check_covering(code, 2, 1).valid);
  }
}
BENCHMARK(BM_CheckCovering)->Unit(benchmark::kMillisecond);

void BM_CheckMultiple(benchmark::State& state) {
  FieldCtx F = make_field(2);
  GrassCode code(F, 5, 2);
  for (const auto& w : enumerate_grassmannian(F, 5, 2)) code.add(w);
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_multiple(code, 1, 5).valid);
  }
}
BENCHMARK(BM_CheckMultiple)->Unit(benchmark::kMillisecond);

void BM_Dualize(benchmark::State& state) {
  FieldCtx F = make_field(2);
  GrassCode code(F, 5, 2);
  for (const auto& w : enumerate_grassmannian(F, 5, 2)) code.add(w);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dualize(code).size());
  }
}
BENCHMARK(BM_Dualize)->Unit(benchmark::kMillisecond);

void BM_GreedyMaxMultiple(benchmark::State& state) {
  for (auto _ : state) {
    SearchResult r = greedy_max_multiple(2, 4, 2, 1, 2);
    benchmark::DoNotOptimize(r.size);
  }
}
BENCHMARK(BM_GreedyMaxMultiple)->Unit(benchmark::kMillisecond);

void BM_GaussianBinomial(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gaussian_binomial(n, n / 2, 2));
  }
}
BENCHMARK(BM_GaussianBinomial)->Arg(16)->Arg(32)->Arg(64);

void BM_PackingBound(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(packing_bound_multiple(6, 4, 3, 2, 2));
  }
}
BENCHMARK(BM_PackingBound);

}  // namespace

BENCHMARK_MAIN();
