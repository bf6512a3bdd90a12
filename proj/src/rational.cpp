#include "iwz/rational.hpp"

#include <numeric>

namespace iwz {

void fail(const std::string& code, const std::string& msg) { throw Error(code, msg); }

std::string to_string(const Q& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Q parse_rational(const std::string& s) {
  Q r;
  if (r.set_str(s, 10) != 0) fail("ParseError", "bad rational '" + s + "'");
  r.canonicalize();
  if (r.get_den() == 0) fail("ParseError", "zero denominator in '" + s + "'");
  return r;
}

int vp(const Z& x, long p) {
  if (x == 0) return kInfVal;
  Z y = abs(x);
  int v = 0;
  while (mpz_divisible_ui_p(y.get_mpz_t(), p)) {
    mpz_divexact_ui(y.get_mpz_t(), y.get_mpz_t(), p);
    ++v;
  }
  return v;
}

int vp(const Q& x, long p) {
  if (x == 0) return kInfVal;
  return vp(x.get_num(), p) - vp(x.get_den(), p);
}

Z floor_q(const Q& x) {
  Z r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

Q frac(const Q& x) { return x - Q(floor_q(x)); }

int64_t mod_floor(int64_t a, int64_t m) {
  int64_t r = a % m;
  return r < 0 ? r + m : r;
}

int64_t z_mod(const Z& x, int64_t m) {
  Z r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), Z(m).get_mpz_t());
  return r.get_si();
}

int64_t ipow(int64_t b, int e) {
  int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

int64_t mulmod(int64_t a, int64_t b, int64_t m) {
  return static_cast<int64_t>((static_cast<__int128>(a) * b) % m);
}

int64_t powmod(int64_t b, int64_t e, int64_t m) {
  int64_t r = 1 % m;
  b = mod_floor(b, m);
  while (e > 0) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

int64_t invmod(int64_t a, int64_t m) {
  int64_t g = m, x = 0, r = mod_floor(a, m), y = 1;
  while (r != 0) {
    int64_t q = g / r;
    int64_t t = g - q * r;
    g = r;
    r = t;
    t = x - q * y;
    x = y;
    y = t;
  }
  if (g != 1) fail("PAdicPole", "no inverse of " + std::to_string(a) + " mod " + std::to_string(m));
  return mod_floor(x, m);
}

Z binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  Z r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Z factorial(long n) {
  Z r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

long next_prime(long n) {
  long k = n + 1;
  while (!is_prime(k)) ++k;
  return k;
}

}  // namespace iwz
