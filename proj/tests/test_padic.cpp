#include "doctest.h"
#include "iwz/padic.hpp"

using namespace iwz;

namespace {

// teichmuller lift by brute force: the root of x^(p-1) = 1 congruent to a mod q (+-1 for p = 2)
int64_t teich_oracle(int64_t a, long p, int64_t mod) {
  long q = q_of(p);
  if (p == 2) return mod_floor(a, 4) == 1 ? 1 : mod - 1;
  for (int64_t x = mod_floor(a, q); x < mod; x += q)
    if (powmod(x, p == 2 ? 2 : p - 1, mod) == 1) return x;
  return -1;
}

// -k with u^k = <a> mod q p^N
int64_t lu_oracle(int64_t a, long p, int N, int64_t u) {
  int64_t mod = q_of(p) * ipow(p, N);
  int64_t w = teich_oracle(a, p, mod);
  int64_t target = mulmod(mod_floor(a, mod), invmod(w, mod), mod);
  int64_t x = 1, pn = ipow(p, N);
  for (int64_t k = 0; k < pn; ++k) {
    if (x == target) return mod_floor(-k, pn);
    x = mulmod(x, u, mod);
  }
  return -1;
}

}  // namespace

TEST_CASE("arithmetic mod p^N") {
  auto x = padic(5, 3, 7), y = padic(5, 3, -3);
  CHECK((x + y).value == 4);
  CHECK((x * padic_inv(x)).value == 1);
  CHECK(padic_pow(x, -1) == padic_inv(x));
  CHECK(valuation(padic(5, 3, 50)) == 2);
  CHECK(valuation(padic(5, 3, 0)) == 3);
  CHECK(padic_from_rational(Q(1, 2), 5, 2).value == 13);
  CHECK_THROWS_AS(padic_inv(padic(5, 3, 10)), Error);
  CHECK((padic(5, 3, 1) + padic(5, 2, 24)).N == 2);
}

TEST_CASE("teichmuller lifts") {
  CHECK(teichmuller(padic(5, 3, 2)).value == 57);
  for (long p : {2L, 3L, 5L, 7L}) {
    int N = 4;
    int64_t mod = ipow(p, N);
    for (int64_t a = 1; a < 3 * p; ++a) {
      if (a % p == 0) continue;
      auto w = teichmuller(padic(p, N, a));
      CHECK(w.value == teich_oracle(a, p, mod));
      // a = omega(a) <a>
      CHECK((w * angle(padic(p, N, a))).value == mod_floor(a, mod));
    }
  }
}

TEST_CASE("L_u matches a discrete-log oracle") {
  CHECK(ell_u(padic(5, 5, 6), padic(5, 5, 6)).value == 624);
  for (long p : {2L, 3L, 5L, 7L}) {
    int64_t u = default_u(p);
    int N = 3, M = N + vq(p);
    for (int64_t a = 1; a < 40; ++a) {
      if (a % p == 0) continue;
      auto L = ell_u(padic(p, M, a), padic(p, M, u));
      CHECK(L.N == N);
      CHECK_MESSAGE(L.value == lu_oracle(a, p, N, u), "p=" << p << " a=" << a);
    }
  }
}

TEST_CASE("L_u is a homomorphism to the additive group") {
  long p = 7;
  int M = 5;
  auto u = padic(p, M, 8);
  for (int64_t a = 1; a < 30; ++a)
    for (int64_t b = 1; b < 30; b += 3) {
      if (a % p == 0 || b % p == 0) continue;
      auto lab = ell_u(padic(p, M, a * b), u);
      CHECK(lab == ell_u(padic(p, M, a), u) + ell_u(padic(p, M, b), u));
    }
  // log(xy) = log x + log y on 1 + pZ_p
  for (int64_t x = 1; x < 200; x += 7)
    for (int64_t y = 1; y < 200; y += 14)
      CHECK(iwasawa_log(padic(p, M, x * y)) == iwasawa_log(padic(p, M, x)) + iwasawa_log(padic(p, M, y)));
}

TEST_CASE("lookup tables agree with the direct functions") {
  for (long p : {2L, 3L, 5L}) {
    int64_t u = default_u(p);
    for (int level : {1, 2, 3}) {
      auto T = make_lu_table(p, level, u);
      auto A = make_angle_table(p, level);
      int M = level + vq(p);
      for (int64_t t = 0; t < T.qpl; ++t) {
        if (t % p == 0) {
          CHECK(T(t) == -1);
          continue;
        }
        CHECK(T(t) == ell_u(padic(p, M, t), padic(p, M, u)).value);
        CHECK(A(t) == angle(padic(p, M, t)).value);
      }
    }
  }
  CHECK_THROWS_AS(make_lu_table(5, 2, 26), Error);
  CHECK_THROWS_AS(ell_u(padic(5, 4, 2), padic(5, 4, 26)), Error);
}

TEST_CASE("roots of unity in Z_p") {
  for (long c : {2L, 3L, 6L}) {
    auto z = embed_root(c, 1, 7, 4);
    CHECK(padic_pow(z, c).value == 1);
    for (long k = 1; k < c; ++k) CHECK(padic_pow(z, k).value != 1);
    CHECK(embed_root(c, 2, 7, 4) == z * z);
  }
  CHECK_THROWS_AS(embed_root(4, 1, 7, 4), Error);
  CHECK(primitive_root(7) == 3);
  CHECK(q_of(2) == 4);
}
