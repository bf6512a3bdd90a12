#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "iwz/shintani.hpp"

using namespace iwz;

namespace {

Z sigma1(long n) {
  Z s = 0;
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) s += d;
  return s;
}

// zeta_K(-1) = (1/60) sum_{b^2 < d, b = d mod 2} sigma_1((d - b^2)/4)
Q siegel(long d) {
  Q s = 0;
  long r = static_cast<long>(std::sqrt(static_cast<double>(d)));
  for (long b = -r - 1; b <= r + 1; ++b)
    if (b * b < d && (d - b * b) % 4 == 0) s += Q(sigma1((d - b * b) / 4));
  return s / 60;
}

// Bernoulli polynomial B_m(x) from the recursion on B_k
Q bernoulli_poly(int m, const Q& x) {
  std::vector<Q> B(m + 1);
  B[0] = 1;
  for (int k = 1; k <= m; ++k) {
    Q s = 0;
    for (int j = 0; j < k; ++j) s += Q(binom(k + 1, j)) * B[j];
    B[k] = -s / (k + 1);
  }
  Q r = 0, xp = 1;
  std::vector<Q> pw(m + 1);
  for (int i = 0; i <= m; ++i) {
    pw[i] = xp;
    xp *= x;
  }
  for (int k = 0; k <= m; ++k) r += Q(binom(m, k)) * B[k] * pw[m - k];
  return r;
}

}  // namespace

TEST_CASE("Dedekind zeta at -1 matches the Siegel formula") {
  CHECK(siegel(5) == Q(1, 30));
  CHECK(siegel(8) == Q(1, 12));
  for (long D : {5L, 2L, 3L, 13L}) {
    auto F = make_field(D);
    auto S = zeta_setup(F, unit_ideal(F));
    Q s = 0;
    for (const auto& v : partial_zeta_values(S, 2)) s += v;
    CHECK_MESSAGE(s == siegel(F.disc), "D=" << D);
  }
}

TEST_CASE("partial zeta over Q matches Hurwitz values") {
  auto F = make_field(1);
  for (long f : {5L, 7L}) {
    auto S = zeta_setup(F, principal(F, fe(f)));
    for (int m = 1; m <= 4; ++m) {
      auto z = partial_zeta_values(S, m);
      for (size_t i = 0; i < z.size(); ++i) {
        long a = S.R.reps[i].a.get_si();
        long ainv = invmod(a % f, f);
        Q fm = 1;
        for (int k = 1; k < m; ++k) fm *= f;
        CHECK(z[i] == -fm * bernoulli_poly(m, Q(ainv, f)) / m);
      }
    }
    if (f == 5) {
      auto z = partial_zeta_values(S, 1);
      std::vector<Q> want = {Q(3, 10), Q(-1, 10), Q(1, 10), Q(-3, 10)};
      for (size_t i = 0; i < z.size(); ++i) CHECK(z[i] == want[S.R.reps[i].a.get_si() - 1]);
    }
  }
}

TEST_CASE("L values of the quadratic character mod 5") {
  auto F = make_field(1);
  auto S = zeta_setup(F, principal(F, fe(5)));
  Character chi;
  for (const auto& c : list_even_characters(S.R, 2))
    if (c.M == 2) chi = c;
  REQUIRE(chi.M == 2);
  CHECK(L_value(chi, S.R, partial_zeta_values(S, 1)) == cyclo_const(2, 0));
  CHECK(L_value(chi, S.R, partial_zeta_values(S, 2)) == cyclo_const(2, Q(-2, 5)));
}

TEST_CASE("cone decompositions cover the positive quadrant once") {
  for (long D : {2L, 3L, 5L, 13L}) {
    auto F = make_field(D);
    CHECK_MESSAGE(cover_test(cone_decomposition(F, unit_ideal(F), unit_ideal(F)), 150, D), "D=" << D);
    ConeOptions o;
    o.subdivide = true;
    auto f = principal(F, fe(3));
    auto dec = cone_decomposition(F, f, f, o);
    CHECK(static_cast<long>(dec.cones.size()) == dec.unit_exp);
    CHECK_MESSAGE(cover_test(dec, 150, D + 1), "D=" << D << " subdivided");
  }
  auto F1 = make_field(1);
  CHECK(cover_test(cone_decomposition(F1, principal(F1, fe(5)), principal(F1, fe(5))), 30, 1));
}

TEST_CASE("residues match a brute-force lattice scan") {
  auto F = make_field(5);
  for (auto f : {principal(F, fe(3)), principal(F, sqrt_d(F)), unit_ideal(F)}) {
    auto R = ray_class_data(F, f);
    for (size_t i = 0; i < std::min<size_t>(R.size(), 3); ++i) {
      const auto& a = R.reps[i];
      auto dec = cone_decomposition(F, f, ideal_mul(F, a, f));
      auto res = enumerate_residues(dec, a);
      for (const auto& rs : res) {
        const Cone& C = dec.cones[rs.cone];
        Q lo_a = 0, hi_a = 0, lo_b = 0, hi_b = 0;
        for (auto& v : {C.basis[0], C.basis[1], add(C.basis[0], C.basis[1])}) {
          lo_a = std::min(lo_a, v.a), hi_a = std::max(hi_a, v.a);
          lo_b = std::min(lo_b, v.b), hi_b = std::max(hi_b, v.b);
        }
        std::vector<std::vector<Q>> found;
        for (long A = std::floor(lo_a.get_d()) - 1; A <= std::ceil(hi_a.get_d()) + 1; ++A)
          for (long B = std::floor(lo_b.get_d()) - 1; B <= std::ceil(hi_b.get_d()) + 1; ++B) {
            FieldElem x = fe(A, B);
            if (!ideal_contains(F, a, x) || !ideal_contains(F, f, sub(x, fe(1)))) continue;
            auto t = cone_coords(F, C, x);
            bool in = true;
            for (int k = 0; k < 2; ++k)
              in = in && (C.zero_ok[k] ? (t[k] >= 0 && t[k] < 1) : (t[k] > 0 && t[k] <= 1));
            if (in) found.push_back(t);
          }
        std::sort(found.begin(), found.end());
        std::vector<std::vector<Q>> got;
        for (const auto& r : rs.xs) got.push_back(r.coords);
        CHECK(got == found);
        // count = [a f : Z v1 + Z v2] / [a : a f]
        Q vol = Q(abs(C.basis[0].a * C.basis[1].b - C.basis[0].b * C.basis[1].a)) / ideal_norm(a);
        CHECK(Q(static_cast<long>(found.size())) == vol / ideal_norm(f));
      }
    }
  }
}

TEST_CASE("twisted values are invariant under unit translates of the terms") {
  auto F = make_field(5);
  auto f = principal(F, fe(3));
  auto S = zeta_setup(F, f);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> e(-2, 2);
  FieldElem eps = S.decs[0].unit;
  for (size_t i = 0; i < S.R.size(); ++i) {
    auto terms = shintani_terms(S.decs[i], S.residues[i]);
    auto moved = terms;
    for (auto& t : moved) {
      FieldElem g = pow(F, eps, e(rng));
      for (auto& v : t.basis) v = mul(F, g, v);
      t.x = mul(F, g, t.x);
    }
    for (int m : {1, 2}) {
      CHECK(twisted_partial_zeta(F, S.R.reps[i], S.tw, terms, m) ==
            twisted_partial_zeta(F, S.R.reps[i], S.tw, moved, m));
    }
  }
}

TEST_CASE("partial values do not depend on the twist prime") {
  auto F = make_field(5);
  auto f = principal(F, sqrt_d(F));
  auto S1 = zeta_setup(F, f);
  TwistOptions t;
  t.start = S1.tw.c + 1;
  auto S2 = zeta_setup(F, f, {}, t);
  CHECK(S1.tw.c != S2.tw.c);
  for (int m : {1, 2}) CHECK(partial_zeta_values(S1, m) == partial_zeta_values(S2, m));
  // generator-scaled cones give the same values
  ConeOptions g;
  g.mode = ScaleMode::Generator;
  auto S3 = zeta_setup(F, f, g);
  CHECK(partial_zeta_values(S3, 2) == partial_zeta_values(S1, 2));
}

TEST_CASE("twist admissibility and errors") {
  auto F = make_field(5);
  auto S = zeta_setup(F, unit_ideal(F));
  CHECK_FALSE(twist_violation(F, S.f, S.tw, S.decs, S.residues).has_value());
  auto P5 = primes_above(F, 5);
  CHECK(twist_violation(F, S.f, twist_from_prime(F, P5[0]), S.decs, S.residues).has_value());
  CHECK_THROWS_AS(twisted_partial_zeta(F, S.R.reps[0], S.tw, shintani_terms(S.decs[0], S.residues[0]), 0), Error);
  TwistOptions none;
  none.bound = 3;
  CHECK_THROWS_AS(zeta_setup(F, unit_ideal(F), {}, none), Error);
}
