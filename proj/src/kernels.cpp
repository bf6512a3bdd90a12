#include "iwz/kernels.hpp"

#include <omp.h>

namespace iwz {

namespace {

void check_job(const GridJob& job) {
  if (job.lu == nullptr) fail("DomainError", "grid job without L_u table");
  if (job.n != 1 && job.n != 2) fail("DomainError", "grid kernels support degree 1 and 2");
  for (const auto& t : job.terms)
    if (t.weights < 0 || t.weights >= static_cast<int>(job.W.size())) fail("DomainError", "bad weight index");
}

int64_t norm_mod(const GridJob& job, int64_t a, int64_t b, int64_t M) {
  if (job.n == 1) return a;
  __int128 v = (__int128)a * a + (__int128)job.m1 * a * b - (__int128)job.m0 * b * b;
  int64_t r = static_cast<int64_t>(v % M);
  return r < 0 ? r + M : r;
}

}  // namespace

std::vector<int64_t> grid_accumulate_serial(const GridJob& job) {
  check_job(job);
  const LuTable& lu = *job.lu;
  int64_t M = lu.qpl, pl = lu.pl, modN = ipow(job.p, job.N), P = ipow(job.p, job.h);
  std::vector<int64_t> out(pl, 0);
  std::vector<int64_t> r(job.n, 0);
  int64_t cells = job.n == 1 ? P : P * P;
  for (const auto& t : job.terms) {
    const auto& W = job.W[t.weights];
    for (int64_t idx = 0; idx < cells; ++idx) {
      r[0] = idx % P;
      if (job.n == 2) r[1] = idx / P;
      int64_t a = t.xa, b = t.xb, s = t.bx;
      for (int k = 0; k < job.n; ++k) {
        a += r[k] * t.va[k];
        b += r[k] * t.vb[k];
        s += r[k] * t.e[k];
      }
      int32_t L = lu(norm_mod(job, mod_floor(a, M), mod_floor(b, M), M));
      if (L < 0) fail("SupportViolation", "norm of a grid point is not a unit");
      int64_t k = mod_floor(L + t.shift, pl);
      out[k] = (out[k] + mulmod(W[mod_floor(s, job.c)], t.scale, modN)) % modN;
    }
  }
  return out;
}

std::vector<int64_t> grid_accumulate_parallel(const GridJob& job, int workers) {
  check_job(job);
  const LuTable& lu = *job.lu;
  const int64_t M = lu.qpl, pl = lu.pl, modN = ipow(job.p, job.N), P = ipow(job.p, job.h), c = job.c;
  const int64_t rows = job.n == 1 ? 1 : P;
  const int64_t units = static_cast<int64_t>(job.terms.size()) * rows;
  int nt = workers > 0 ? workers : omp_get_max_threads();
  std::vector<std::vector<int64_t>> partial(nt);
  bool bad = false;

#pragma omp parallel num_threads(nt)
  {
    int tid = omp_get_thread_num();
    std::vector<int64_t> acc(pl, 0);
    std::vector<int64_t> Ws(c);
    int64_t cur_term = -1;
    uint64_t adds = 0;
#pragma omp for schedule(static)
    for (int64_t u = 0; u < units; ++u) {
      int64_t ti = u / rows, r1 = u % rows;
      const GridTerm& t = job.terms[ti];
      if (ti != cur_term) {
        const auto& W = job.W[t.weights];
        for (int64_t s = 0; s < c; ++s) Ws[s] = mulmod(W[s], t.scale, modN);
        cur_term = ti;
      }
      // X at r = (0, r1) for n = 2, r = (0) for n = 1; then walk the first coordinate
      int64_t a0 = t.xa, b0 = t.xb, s0 = t.bx;
      if (job.n == 2) {
        a0 += r1 * t.va[1];
        b0 += r1 * t.vb[1];
        s0 += r1 * t.e[1];
      }
      int64_t a = mod_floor(a0, M), b = mod_floor(b0, M), s = mod_floor(s0, c);
      const int64_t da = mod_floor(t.va[0], M), db = mod_floor(t.vb[0], M), ds = mod_floor(t.e[0], c);
      const int64_t sh = mod_floor(t.shift, pl);
      for (int64_t r0 = 0; r0 < P; ++r0) {
        int64_t nrm = job.n == 1 ? a : norm_mod(job, a, b, M);
        int32_t L = lu.table[nrm];
        if (L < 0) {
#pragma omp atomic write
          bad = true;
          break;
        }
        int64_t k = L + sh;
        if (k >= pl) k -= pl;
        acc[k] += Ws[s];
        a += da;
        if (a >= M) a -= M;
        b += db;
        if (b >= M) b -= M;
        s += ds;
        if (s >= c) s -= c;
      }
      if (++adds % 4096 == 0)
        for (auto& x : acc) x %= modN;
    }
    for (auto& x : acc) x %= modN;
    partial[tid] = std::move(acc);
  }
  if (bad) fail("SupportViolation", "norm of a grid point is not a unit");
  std::vector<int64_t> out(pl, 0);
  for (const auto& part : partial)
    if (!part.empty())
      for (int64_t k = 0; k < pl; ++k) out[k] = (out[k] + part[k]) % modN;
  return out;
}

}  // namespace iwz
