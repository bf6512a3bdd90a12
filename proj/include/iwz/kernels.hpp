#pragma once

#include <cstdint>
#include <vector>

#include "iwz/padic.hpp"

namespace iwz {

// One (j, x) summand of the r-grid sum: X_r = x + sum_k r_k v_k in the basis (1, omega).
struct GridTerm {
  int64_t xa = 0, xb = 0;
  int64_t va[2] = {0, 0}, vb[2] = {0, 0};
  int64_t bx = 0;          // twist exponent of x, mod c
  int64_t e[2] = {0, 0};   // twist exponents of v_k, mod c
  int weights = 0;         // index into GridJob::W
  int64_t scale = 1;       // multiplies every mass, mod p^N
  int64_t shift = 0;       // added to every exponent, mod p^level
};

// Accumulates sum_terms sum_{r in [0,p^h)^n} scale*W[bx + e.r] (1+T)^{shift + L_u(N X_r)}
// into coefficients mod p^N at level lu.level.
struct GridJob {
  int n = 2;
  long p = 2;
  int h = 1;
  int64_t c = 1;
  int64_t m0 = 0, m1 = 0;  // omega^2 = m1 omega + m0
  int N = 1;
  const LuTable* lu = nullptr;
  std::vector<std::vector<int64_t>> W;  // residues mod p^N indexed by s mod c
  std::vector<GridTerm> terms;
};

std::vector<int64_t> grid_accumulate_serial(const GridJob& job);
// workers <= 0: OpenMP default
std::vector<int64_t> grid_accumulate_parallel(const GridJob& job, int workers = 0);

}  // namespace iwz
