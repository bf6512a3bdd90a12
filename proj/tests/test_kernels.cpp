#include <random>

#include "doctest.h"
#include "iwz/kernels.hpp"

using namespace iwz;

namespace {

GridJob random_job(int n, long p, int h, int level, std::mt19937_64& rng, LuTable& lu) {
  lu = make_lu_table(p, level, default_u(p));
  GridJob g;
  g.n = n;
  g.p = p;
  g.h = h;
  g.c = 11;
  g.m0 = 1;
  g.m1 = 1;
  g.N = 4;
  g.lu = &lu;
  int64_t modN = ipow(p, g.N), M = lu.qpl;
  std::uniform_int_distribution<int64_t> any(0, 1 << 20);
  for (int w = 0; w < 3; ++w) {
    std::vector<int64_t> W(g.c);
    for (auto& x : W) x = any(rng) % modN;
    g.W.push_back(W);
  }
  for (int t = 0; t < 12; ++t) {
    GridTerm gt;
    // x = unit + p*(...), v_k in p O, so every grid point has unit norm
    gt.xa = mod_floor(1 + p * (any(rng) % 50), M);
    gt.xb = mod_floor(p * (any(rng) % 50), M);
    for (int k = 0; k < n; ++k) {
      gt.va[k] = mod_floor(p * (any(rng) % 50), M);
      gt.vb[k] = mod_floor(p * (any(rng) % 50), M);
      gt.e[k] = 1 + any(rng) % 10;
    }
    gt.bx = any(rng) % 11;
    gt.weights = static_cast<int>(any(rng) % 3);
    gt.scale = any(rng) % modN;
    gt.shift = any(rng) % 100 - 50;
    g.terms.push_back(gt);
  }
  return g;
}

}  // namespace

TEST_CASE("parallel grid accumulation matches the serial reference") {
  std::mt19937_64 rng(17);
  for (int n : {1, 2})
    for (long p : {3L, 5L})
      for (int h : {1, 2, 3}) {
        LuTable lu;
        auto job = random_job(n, p, h, 2, rng, lu);
        auto ref = grid_accumulate_serial(job);
        for (int w : {1, 2, 4}) CHECK(grid_accumulate_parallel(job, w) == ref);
        CHECK(grid_accumulate_parallel(job) == ref);
      }
}

TEST_CASE("grid accumulation rejects non-unit norms") {
  std::mt19937_64 rng(3);
  LuTable lu;
  auto job = random_job(1, 5, 1, 1, rng, lu);
  job.terms[0].xa = 5;
  job.terms[0].va[0] = 5;
  CHECK_THROWS_AS(grid_accumulate_serial(job), Error);
  CHECK_THROWS_AS(grid_accumulate_parallel(job, 2), Error);
  job.lu = nullptr;
  CHECK_THROWS_AS(grid_accumulate_serial(job), Error);
}
