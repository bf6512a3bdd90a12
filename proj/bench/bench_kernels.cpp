#include <benchmark/benchmark.h>

#include <map>
#include <random>

#include "iwz/kernels.hpp"

using namespace iwz;

namespace {

struct Fixture {
  LuTable lu;
  GridJob job;
};

Fixture& fixture(int h) {
  static std::map<int, Fixture> cache;
  auto it = cache.find(h);
  if (it != cache.end()) return it->second;
  Fixture& fx = cache[h];
  const long p = 5;
  fx.lu = make_lu_table(p, 2, default_u(p));
  auto& g = fx.job;
  g.n = 2;
  g.p = p;
  g.h = h;
  g.c = 11;
  g.m0 = 1;
  g.m1 = 1;
  g.N = 4;
  g.lu = &fx.lu;
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int64_t> any(0, 1 << 20);
  int64_t modN = ipow(p, g.N), M = fx.lu.qpl;
  for (int w = 0; w < 2; ++w) {
    std::vector<int64_t> W(g.c);
    for (auto& x : W) x = any(rng) % modN;
    g.W.push_back(W);
  }
  for (int t = 0; t < 8; ++t) {
    GridTerm gt;
    gt.xa = mod_floor(1 + p * (any(rng) % 50), M);
    gt.xb = mod_floor(p * (any(rng) % 50), M);
    for (int k = 0; k < 2; ++k) {
      gt.va[k] = mod_floor(p * (any(rng) % 50), M);
      gt.vb[k] = mod_floor(p * (any(rng) % 50), M);
      gt.e[k] = 1 + any(rng) % 10;
    }
    gt.bx = any(rng) % 11;
    gt.weights = static_cast<int>(any(rng) % 2);
    gt.scale = 1 + any(rng) % (modN - 1);
    g.terms.push_back(gt);
  }
  return fx;
}

void BM_serial(benchmark::State& st) {
  auto& fx = fixture(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(grid_accumulate_serial(fx.job));
}

void BM_parallel(benchmark::State& st) {
  auto& fx = fixture(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(grid_accumulate_parallel(fx.job, static_cast<int>(st.range(1))));
}

}  // namespace

BENCHMARK(BM_serial)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_parallel)
    ->ArgsProduct({{2, 3, 4}, {2, 4, 0}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

BENCHMARK_MAIN();
