#include "iwz/poly.hpp"

#include <algorithm>

namespace iwz {

IwasawaPoly make_poly(long p, int N, int ell, int64_t period) {
  IwasawaPoly a;
  a.p = p;
  a.N = N;
  a.ell = ell;
  a.period = period > 0 ? period : ipow(p, ell);
  a.coeffs.assign(a.period, 0);
  return a;
}

static void check(const IwasawaPoly& a, const IwasawaPoly& b) {
  if (a.p != b.p || a.N != b.N || a.period != b.period) fail("DomainError", "incompatible Iwasawa polynomials");
}

IwasawaPoly operator+(const IwasawaPoly& a, const IwasawaPoly& b) {
  check(a, b);
  IwasawaPoly r = a;
  int64_t m = a.modulus();
  for (size_t k = 0; k < r.coeffs.size(); ++k) r.coeffs[k] = (r.coeffs[k] + b.coeffs[k]) % m;
  return r;
}

IwasawaPoly operator-(const IwasawaPoly& a, const IwasawaPoly& b) {
  check(a, b);
  IwasawaPoly r = a;
  int64_t m = a.modulus();
  for (size_t k = 0; k < r.coeffs.size(); ++k) r.coeffs[k] = mod_floor(r.coeffs[k] - b.coeffs[k], m);
  return r;
}

IwasawaPoly poly_scale(const IwasawaPoly& a, int64_t s) {
  IwasawaPoly r = a;
  int64_t m = a.modulus();
  s = mod_floor(s, m);
  for (auto& c : r.coeffs) c = mulmod(c, s, m);
  return r;
}

IwasawaPoly poly_shift(const IwasawaPoly& a, int64_t j) {
  IwasawaPoly r = a;
  for (int64_t k = 0; k < a.period; ++k) r.coeffs[mod_floor(k + j, a.period)] = a.coeffs[k];
  return r;
}

void poly_add_term(IwasawaPoly& a, int64_t k, int64_t b) {
  int64_t m = a.modulus();
  int64_t& c = a.coeffs[mod_floor(k, a.period)];
  c = mod_floor(c + b, m);
}

int64_t evaluate_at(const IwasawaPoly& a, int64_t s, int64_t u) {
  int64_t m = a.modulus();
  int64_t base = s >= 0 ? powmod(u, s, m) : powmod(invmod(u, m), -s, m);
  int64_t x = 1 % m, acc = 0;
  for (int64_t k = 0; k < a.period; ++k) {
    acc = (acc + mulmod(a.coeffs[k], x, m)) % m;
    x = mulmod(x, base, m);
  }
  return acc;
}

int mu_invariant(const IwasawaPoly& a) {
  int best = kInfVal;
  for (auto c : a.coeffs)
    if (c != 0) best = std::min(best, vp(Z(c), a.p));
  return best;
}

int64_t mu_witness(const IwasawaPoly& a) {
  int mu = mu_invariant(a);
  if (mu == kInfVal) return -1;
  for (int64_t k = 0; k < a.period; ++k)
    if (a.coeffs[k] != 0 && vp(Z(a.coeffs[k]), a.p) == mu) return k;
  return -1;
}

std::vector<int64_t> sorted_coeffs(const IwasawaPoly& a) {
  auto v = a.coeffs;
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace iwz
