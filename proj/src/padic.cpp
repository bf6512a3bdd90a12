#include "iwz/padic.hpp"

#include "iwz/cyclotomic.hpp"

namespace iwz {

namespace {

void check_compat(const PadicInt& x, const PadicInt& y) {
  if (x.p != y.p) fail("DomainError", "mixed primes");
}

// log(w) mod p^N for w ≡ 1 mod q, w given mod p^M with M >= N + slack
Z log_series(const Z& w, long p, int N) {
  Z t = w - 1;
  int v = vp(t, p);
  if (v == kInfVal) return 0;
  // first K with K*v - floor(log_p K) >= N; that bound is nondecreasing in K
  auto logp = [p](long k) {
    int e = 0;
    while (k >= p) {
      k /= p;
      ++e;
    }
    return e;
  };
  long K = 1;
  while (K * v - logp(K) < N) ++K;
  int e = logp(K);
  Z mod;
  mpz_ui_pow_ui(mod.get_mpz_t(), p, N + e);
  Z tm = t % mod;
  Z power = 1, acc = 0;
  for (long k = 1; k < K; ++k) {
    power = (power * tm) % mod;
    long kk = k;
    Z pk = 1;
    while (kk % p == 0) {
      kk /= p;
      pk *= p;
    }
    Z term = power / pk;  // exact: v(t^k) >= k >= v_p(k)
    Z inv;
    mpz_invert(inv.get_mpz_t(), Z(kk).get_mpz_t(), mod.get_mpz_t());
    term = (term * inv) % mod;
    if (k % 2 == 0) term = -term;
    acc += term;
  }
  Z pn;
  mpz_ui_pow_ui(pn.get_mpz_t(), p, N);
  Z r;
  mpz_fdiv_r(r.get_mpz_t(), acc.get_mpz_t(), pn.get_mpz_t());
  return r;
}

Z teich_z(const Z& a, long p, int M) {
  Z mod;
  mpz_ui_pow_ui(mod.get_mpz_t(), p, M);
  if (p == 2) {
    Z r;
    mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), 4);
    return r == 1 ? Z(1) : mod - 1;
  }
  Z x;
  mpz_fdiv_r(x.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t());
  for (int i = 0; i <= M; ++i) mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), p, mod.get_mpz_t());
  return x;
}

// <a> mod p^M as an integer
Z angle_z(const Z& a, long p, int M) {
  Z mod;
  mpz_ui_pow_ui(mod.get_mpz_t(), p, M);
  Z w = teich_z(a, p, M), inv;
  mpz_invert(inv.get_mpz_t(), w.get_mpz_t(), mod.get_mpz_t());
  Z r = (a * inv) % mod;
  if (r < 0) r += mod;
  return r;
}

}  // namespace

PadicInt padic(long p, int N, int64_t v) {
  PadicInt x;
  x.p = p;
  x.N = N;
  x.value = mod_floor(v, ipow(p, N));
  return x;
}

PadicInt padic_from_rational(const Q& r, long p, int N) { return padic(p, N, reduce_mod_pN(r, p, N)); }

PadicInt operator+(const PadicInt& x, const PadicInt& y) {
  check_compat(x, y);
  int N = std::min(x.N, y.N);
  return padic(x.p, N, x.value + y.value);
}

PadicInt operator-(const PadicInt& x, const PadicInt& y) {
  check_compat(x, y);
  int N = std::min(x.N, y.N);
  return padic(x.p, N, x.value - y.value);
}

PadicInt operator*(const PadicInt& x, const PadicInt& y) {
  check_compat(x, y);
  int N = std::min(x.N, y.N);
  int64_t m = ipow(x.p, N);
  return padic(x.p, N, mulmod(x.value % m, y.value % m, m));
}

PadicInt padic_inv(const PadicInt& x) {
  if (!is_unit(x)) fail("PAdicPole", "inverse of a non-unit");
  return padic(x.p, x.N, invmod(x.value, x.modulus()));
}

PadicInt padic_pow(const PadicInt& x, int64_t e) {
  if (e < 0) return padic_pow(padic_inv(x), -e);
  return padic(x.p, x.N, powmod(x.value, e, x.modulus()));
}

int valuation(const PadicInt& x) {
  if (x.value == 0) return x.N;
  return std::min(x.N, vp(Z(x.value), x.p));
}

bool is_unit(const PadicInt& x) { return x.value % x.p != 0; }

long q_of(long p) { return p == 2 ? 4 : p; }
int vq(long p) { return p == 2 ? 2 : 1; }
int64_t default_u(long p) { return p == 2 ? 5 : 1 + p; }

long primitive_root(long p) {
  if (p == 2) return 1;
  long phi = p - 1;
  std::vector<long> fac;
  long m = phi;
  for (long d = 2; d * d <= m; ++d)
    if (m % d == 0) {
      fac.push_back(d);
      while (m % d == 0) m /= d;
    }
  if (m > 1) fac.push_back(m);
  for (long g = 2; g < p; ++g) {
    bool ok = true;
    for (long f : fac)
      if (powmod(g, phi / f, p) == 1) ok = false;
    if (ok) return g;
  }
  fail("DomainError", "no primitive root");
}

PadicInt teichmuller(const PadicInt& a) {
  if (!is_unit(a)) return padic(a.p, a.N, 0);
  return padic(a.p, a.N, teich_z(Z(a.value), a.p, a.N).get_si());
}

PadicInt angle(const PadicInt& a) {
  if (!is_unit(a)) return padic(a.p, a.N, 0);
  return padic(a.p, a.N, angle_z(Z(a.value), a.p, a.N).get_si());
}

PadicInt iwasawa_log(const PadicInt& w) {
  if (mod_floor(w.value - 1, q_of(w.p)) != 0) fail("DomainError", "log argument not in 1+qZ_p");
  return padic(w.p, w.N, log_series(Z(w.value), w.p, w.N).get_si());
}

PadicInt ell_u(const PadicInt& a, const PadicInt& u) {
  long p = a.p;
  int k = vq(p);
  // L_u(a) mod p^N depends on a mod q p^N, so N = (input precision) - v_p(q)
  int M = std::min(a.N, u.N);
  int N = M - k;
  if (u.N <= k || vp(Z(u.value - 1), p) != k) fail("BadGenerator", "u is not a generator of 1+qZ_p");
  if (!is_unit(a)) fail("DomainError", "L_u of a non-unit");
  if (N < 1) fail("DomainError", "precision too small for L_u");
  Z la = log_series(angle_z(Z(a.value), p, M), p, M);
  Z lu = log_series(Z(u.value), p, M);
  Z pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), p, k);
  Z mod;
  mpz_ui_pow_ui(mod.get_mpz_t(), p, N);
  Z num = la / pk, den = lu / pk, inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
  Z r = (-num * inv) % mod;
  if (r < 0) r += mod;
  return padic(p, N, r.get_si());
}

PadicInt embed_root(long c, long k, long p, int N) {
  if (c <= 0 || (p - 1) % c != 0) fail("NotCompatible", "c does not divide p-1");
  long g = primitive_root(p);
  PadicInt w = teichmuller(padic(p, N, g));
  long e = mod_floor(k, c) * ((p - 1) / c);
  return padic_pow(w, e);
}

LuTable make_lu_table(long p, int level, int64_t u) {
  LuTable T;
  T.p = p;
  T.level = level;
  T.pl = ipow(p, level);
  long q = q_of(p);
  T.qpl = q * T.pl;
  if (mod_floor(u - 1, q) != 0 || (level > 0 && mod_floor(u - 1, q * p) == 0))
    fail("BadGenerator", "u is not a generator of 1+qZ_p");
  // L_u on 1+qZ_p mod q p^level: L_u(u^k) = -k
  std::vector<int32_t> on_ones(T.pl, -1);
  int64_t w = 1 % T.qpl;
  for (int64_t k = 0; k < T.pl; ++k) {
    on_ones[(w - 1) / q % T.pl] = static_cast<int32_t>(mod_floor(-k, T.pl));
    w = mulmod(w, mod_floor(u, T.qpl), T.qpl);
  }
  // omega residues mod q p^level
  std::vector<int64_t> omega_inv(q, 0);
  for (long r = 1; r < q; ++r) {
    if (r % p == 0) continue;
    Z wr = teich_z(Z(r), p, level + vq(p));
    omega_inv[r] = invmod(z_mod(wr, T.qpl), T.qpl);
  }
  T.table.assign(T.qpl, -1);
  for (int64_t t = 0; t < T.qpl; ++t) {
    if (t % p == 0) continue;
    int64_t a = mulmod(t, omega_inv[t % q], T.qpl);
    T.table[t] = on_ones[(a - 1) / q % T.pl];
  }
  return T;
}

AngleTable make_angle_table(long p, int level) {
  AngleTable T;
  T.p = p;
  T.level = level;
  long q = q_of(p);
  T.qpl = q * ipow(p, level);
  std::vector<int64_t> omega_inv(q, 0);
  for (long r = 1; r < q; ++r) {
    if (r % p == 0) continue;
    Z wr = teich_z(Z(r), p, level + vq(p));
    omega_inv[r] = invmod(z_mod(wr, T.qpl), T.qpl);
  }
  T.table.assign(T.qpl, -1);
  for (int64_t t = 0; t < T.qpl; ++t) {
    if (t % p == 0) continue;
    T.table[t] = mulmod(t, omega_inv[t % q], T.qpl);
  }
  return T;
}

}  // namespace iwz
