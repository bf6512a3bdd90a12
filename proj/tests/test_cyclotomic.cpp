#include <random>

#include "doctest.h"
#include "iwz/cyclotomic.hpp"

using namespace iwz;

namespace {

using Poly = std::vector<Z>;

// x^M - 1 divided by Phi_d for proper divisors d, by long division
Poly cyclotomic_oracle(int64_t M) {
  Poly num(M + 1, 0);
  num[0] = -1;
  num[M] = 1;
  for (int64_t d = 1; d < M; ++d) {
    if (M % d) continue;
    Poly den = cyclotomic_oracle(d);
    Poly q(num.size() - den.size() + 1, 0);
    Poly r = num;
    for (int64_t i = static_cast<int64_t>(q.size()) - 1; i >= 0; --i) {
      q[i] = r[i + den.size() - 1];
      for (size_t j = 0; j < den.size(); ++j) r[i + j] -= q[i] * den[j];
    }
    num = q;
  }
  return num;
}

int moebius(int64_t n) {
  int m = 1;
  for (int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      n /= d;
      if (n % d == 0) return 0;
      m = -m;
    }
  if (n > 1) m = -m;
  return m;
}

CycloElem random_elem(int64_t M, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(-5, 5);
  CycloElem x = cyclo_const(M, 0);
  for (auto& c : x.c) c = Q(d(rng), 1 + (d(rng) + 5) % 3);
  for (auto& c : x.c) c.canonicalize();
  return x;
}

}  // namespace

TEST_CASE("cyclotomic polynomials match long division") {
  for (int64_t M : {1, 2, 3, 4, 5, 6, 8, 9, 12, 15, 21, 30}) {
    CHECK(cyclotomic_poly(M) == cyclotomic_oracle(M));
    CHECK(static_cast<int64_t>(cyclotomic_poly(M).size()) == euler_phi(M) + 1);
  }
}

TEST_CASE("roots of unity") {
  for (int64_t M : {3, 5, 7, 11, 12}) {
    CycloElem z = root_of_unity(M, 1), w = cyclo_const(M, 1);
    for (int64_t i = 0; i < M; ++i) w = w * z;
    CHECK(w == cyclo_const(M, 1));
    // sum of primitive roots is the Moebius function
    CycloElem s = cyclo_const(M, 0);
    for (int64_t k = 1; k <= M; ++k)
      if (std::gcd(k, M) == 1) s += root_of_unity(M, k);
    CHECK(s == cyclo_const(M, moebius(M)));
    CHECK(root_of_unity(M, M + 2) == root_of_unity(M, 2));
  }
}

TEST_CASE("field operations") {
  std::mt19937_64 rng(11);
  for (int64_t M : {5, 7, 12}) {
    for (int it = 0; it < 10; ++it) {
      CycloElem x = random_elem(M, rng), y = random_elem(M, rng);
      if (x.is_zero()) continue;
      CHECK(x * invert(x) == cyclo_const(M, 1));
      CHECK((x + y) * x == x * x + y * x);
      CHECK(x - x == cyclo_const(M, 0));
      // the norm is rational
      CycloElem nx = cyclo_const(M, 1);
      for (int64_t t = 1; t < M; ++t)
        if (std::gcd(t, M) == 1) nx = nx * galois(x, t);
      CHECK(is_rational(nx));
      int64_t a = M == 12 ? 5 : 2, b = M == 12 ? 7 : 3;
      CHECK(galois(galois(x, a), b) == galois(x, a * b % M));
      CHECK(galois(x * y, a) == galois(x, a) * galois(y, a));
    }
  }
  CHECK_THROWS_AS(invert(cyclo_const(7, 0)), Error);
  CHECK_THROWS_AS(extract_rational(root_of_unity(7, 1)), Error);
  CHECK(extract_rational(cyclo_const(7, Q(3, 4))) == Q(3, 4));
}

TEST_CASE("reduction mod p^N") {
  CHECK(reduce_mod_pN(Q(1, 2), 5, 2) == 13);
  CHECK(reduce_mod_pN(Q(-1), 3, 3) == 26);
  CHECK(reduce_mod_pN(Q(7, 3), 5, 1) == 4);
  CHECK_THROWS_AS(reduce_mod_pN(Q(1, 5), 5, 2), Error);
}

TEST_CASE("truncated series") {
  const int deg = 8;
  auto x = series_var(1, deg, 1, 0);
  auto one = series_const(1, deg, cyclo_const(1, 1));
  auto ex = series_exp(x), emx = series_exp(x * cyclo_const(1, -1));
  auto prod = ex * emx;
  CHECK(series_coefficient(prod, {0}) == cyclo_const(1, 1));
  for (int k = 1; k <= deg; ++k) CHECK(series_coefficient(prod, {k}).is_zero());
  // w / (e^w - 1) gives B_k / k!
  auto em1 = ex + one * cyclo_const(1, -1);
  TruncatedSeries q = series_zero(1, deg, 1);
  for (int k = 0; k < deg; ++k) q.coeffs[{k}] = series_coefficient(em1, {k + 1});
  auto B = series_inverse(q);
  CHECK(series_coefficient(B, {1}) == cyclo_const(1, Q(-1, 2)));
  CHECK(series_coefficient(B, {2}) == cyclo_const(1, Q(1, 12)));
  CHECK(series_coefficient(B, {4}) == cyclo_const(1, Q(-1, 720)));
  CHECK(series_coefficient(B, {3}).is_zero());
  // two variables: (1 - x - y)^{-1} has binomial coefficients
  auto X = series_var(2, 6, 1, 0), Y = series_var(2, 6, 1, 1);
  auto G = series_inverse(series_const(2, 6, cyclo_const(1, 1)) + (X + Y) * cyclo_const(1, -1));
  CHECK(series_coefficient(G, {2, 3}) == cyclo_const(1, 10));
}
