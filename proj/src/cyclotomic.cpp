#include "iwz/cyclotomic.hpp"

#include <mutex>
#include <numeric>

namespace iwz {

namespace {

using Poly = std::vector<Q>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// a = q*b + r over Q
void poly_divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  r = a;
  trim(r);
  Poly bb = b;
  trim(bb);
  q.assign(r.size() >= bb.size() ? r.size() - bb.size() + 1 : 0, Q(0));
  while (r.size() >= bb.size() && !r.empty()) {
    size_t shift = r.size() - bb.size();
    Q t = r.back() / bb.back();
    q[shift] = t;
    for (size_t i = 0; i < bb.size(); ++i) r[shift + i] -= t * bb[i];
    r.pop_back();
    trim(r);
  }
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Q(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

Poly poly_sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Q(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

void reduce_into(std::vector<Q>& r, int64_t M) {
  const auto& phi = cyclotomic_poly(M);
  size_t d = phi.size() - 1;
  for (size_t i = r.size(); i-- > d;) {
    if (r[i] == 0) continue;
    Q t = r[i];
    for (size_t j = 0; j <= d; ++j) r[i - d + j] -= t * Q(phi[j]);
  }
  r.resize(d, Q(0));
}

void check_same(const CycloElem& x, const CycloElem& y) {
  if (x.M != y.M) fail("DomainError", "mixed cyclotomic conductors");
}

}  // namespace

bool CycloElem::is_zero() const {
  for (const auto& q : c)
    if (q != 0) return false;
  return true;
}

int64_t euler_phi(int64_t M) {
  int64_t r = M, m = M;
  for (int64_t p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    r -= r / p;
  }
  if (m > 1) r -= r / m;
  return r;
}

const std::vector<Z>& cyclotomic_poly(int64_t M) {
  static std::recursive_mutex mu;
  static std::map<int64_t, std::vector<Z>> cache;
  std::lock_guard<std::recursive_mutex> lock(mu);
  auto it = cache.find(M);
  if (it != cache.end()) return it->second;
  // x^M - 1 divided by Phi_d for proper divisors d
  std::vector<Z> num(M + 1, 0);
  num[0] = -1;
  num[M] = 1;
  for (int64_t d = 1; d < M; ++d) {
    if (M % d) continue;
    const std::vector<Z>& den = cyclotomic_poly(d);
    std::vector<Z> q(num.size() - den.size() + 1, 0);
    std::vector<Z> r = num;
    for (size_t i = q.size(); i-- > 0;) {
      Z t = r[i + den.size() - 1];
      q[i] = t;
      for (size_t j = 0; j < den.size(); ++j) r[i + j] -= t * den[j];
    }
    num = q;
  }
  return cache.emplace(M, num).first->second;
}

CycloElem cyclo_const(int64_t M, const Q& q) {
  CycloElem x;
  x.M = M;
  x.c.assign(euler_phi(M), Q(0));
  x.c[0] = q;
  return x;
}

CycloElem root_of_unity(int64_t M, int64_t k) {
  k = ((k % M) + M) % M;
  std::vector<Q> r(k + 1, Q(0));
  r[k] = 1;
  reduce_into(r, M);
  CycloElem x;
  x.M = M;
  x.c = r;
  return x;
}

CycloElem operator+(const CycloElem& x, const CycloElem& y) {
  check_same(x, y);
  CycloElem r = x;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += y.c[i];
  return r;
}

CycloElem& operator+=(CycloElem& x, const CycloElem& y) {
  check_same(x, y);
  for (size_t i = 0; i < x.c.size(); ++i) x.c[i] += y.c[i];
  return x;
}

CycloElem operator-(const CycloElem& x, const CycloElem& y) {
  check_same(x, y);
  CycloElem r = x;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] -= y.c[i];
  return r;
}

CycloElem operator-(const CycloElem& x) {
  CycloElem r = x;
  for (auto& q : r.c) q = -q;
  return r;
}

CycloElem operator*(const CycloElem& x, const CycloElem& y) {
  check_same(x, y);
  std::vector<Q> r(x.c.size() + y.c.size() - 1, Q(0));
  for (size_t i = 0; i < x.c.size(); ++i) {
    if (x.c[i] == 0) continue;
    for (size_t j = 0; j < y.c.size(); ++j)
      if (y.c[j] != 0) r[i + j] += x.c[i] * y.c[j];
  }
  reduce_into(r, x.M);
  CycloElem z;
  z.M = x.M;
  z.c = std::move(r);
  return z;
}

CycloElem operator*(const CycloElem& x, const Q& s) {
  CycloElem r = x;
  for (auto& q : r.c) q *= s;
  return r;
}

CycloElem invert(const CycloElem& x) {
  if (x.is_zero()) fail("DivisionByZero", "inverse of zero cyclotomic element");
  const auto& phiz = cyclotomic_poly(x.M);
  Poly phi(phiz.begin(), phiz.end());
  Poly a = x.c;
  trim(a);
  // extended Euclid: s*a ≡ g (mod phi)
  Poly r0 = phi, r1 = a, s0 = {}, s1 = {Q(1)};
  while (!r1.empty() && r1.size() > 1) {
    Poly q, r;
    poly_divmod(r0, r1, q, r);
    Poly s2 = poly_sub(s0, poly_mul(q, s1));
    r0 = r1;
    r1 = r;
    s0 = s1;
    s1 = s2;
  }
  if (r1.empty()) fail("DivisionByZero", "element is a zero divisor");
  Q g = r1[0];
  Poly res = s1;
  for (auto& q : res) q /= g;
  reduce_into(res, x.M);
  CycloElem out;
  out.M = x.M;
  out.c = res;
  return out;
}

CycloElem galois(const CycloElem& x, int64_t t) {
  if (std::gcd(t, x.M) != 1) fail("DomainError", "galois exponent not coprime to conductor");
  CycloElem r = cyclo_const(x.M, 0);
  for (size_t i = 0; i < x.c.size(); ++i)
    if (x.c[i] != 0) r += root_of_unity(x.M, static_cast<int64_t>(i) * t) * x.c[i];
  return r;
}

bool is_rational(const CycloElem& x) {
  for (size_t i = 1; i < x.c.size(); ++i)
    if (x.c[i] != 0) return false;
  return true;
}

std::string to_string(const CycloElem& x) {
  std::string s = "[";
  for (size_t i = 0; i < x.c.size(); ++i) {
    if (i) s += ",";
    s += to_string(x.c[i]);
  }
  return s + "]";
}

Q extract_rational(const CycloElem& x) {
  if (!is_rational(x)) fail("NotRational", "non-rational cyclotomic value " + to_string(x));
  return x.c[0];
}

int64_t reduce_mod_pN(const Q& r, long p, int N) {
  int64_t m = ipow(p, N);
  if (r == 0) return 0;
  if (r.get_den() % p == 0) fail("PAdicPole", "denominator divisible by p in " + to_string(r));
  int64_t num = z_mod(r.get_num(), m), den = z_mod(r.get_den(), m);
  return mulmod(num, invmod(den, m), m);
}

TruncatedSeries series_zero(int nvars, int deg, int64_t M) {
  TruncatedSeries s;
  s.nvars = nvars;
  s.max_total_degree = deg;
  s.M = M;
  return s;
}

TruncatedSeries series_const(int nvars, int deg, const CycloElem& c) {
  TruncatedSeries s = series_zero(nvars, deg, c.M);
  if (!c.is_zero()) s.coeffs[std::vector<int>(nvars, 0)] = c;
  return s;
}

TruncatedSeries series_var(int nvars, int deg, int64_t M, int i, const Q& scale) {
  TruncatedSeries s = series_zero(nvars, deg, M);
  if (deg >= 1 && scale != 0) {
    std::vector<int> e(nvars, 0);
    e[i] = 1;
    s.coeffs[e] = cyclo_const(M, scale);
  }
  return s;
}

TruncatedSeries operator+(const TruncatedSeries& A, const TruncatedSeries& B) {
  TruncatedSeries r = A;
  r.max_total_degree = std::min(A.max_total_degree, B.max_total_degree);
  for (const auto& [e, c] : B.coeffs) {
    auto it = r.coeffs.find(e);
    if (it == r.coeffs.end())
      r.coeffs.emplace(e, c);
    else
      it->second += c;
  }
  for (auto it = r.coeffs.begin(); it != r.coeffs.end();) {
    int deg = std::accumulate(it->first.begin(), it->first.end(), 0);
    if (it->second.is_zero() || deg > r.max_total_degree)
      it = r.coeffs.erase(it);
    else
      ++it;
  }
  return r;
}

TruncatedSeries operator*(const TruncatedSeries& A, const TruncatedSeries& B) {
  TruncatedSeries r = series_zero(A.nvars, std::min(A.max_total_degree, B.max_total_degree), A.M);
  for (const auto& [ea, ca] : A.coeffs) {
    int da = std::accumulate(ea.begin(), ea.end(), 0);
    for (const auto& [eb, cb] : B.coeffs) {
      int db = std::accumulate(eb.begin(), eb.end(), 0);
      if (da + db > r.max_total_degree) continue;
      std::vector<int> e(A.nvars);
      for (int i = 0; i < A.nvars; ++i) e[i] = ea[i] + eb[i];
      CycloElem prod = ca * cb;
      auto it = r.coeffs.find(e);
      if (it == r.coeffs.end())
        r.coeffs.emplace(e, prod);
      else
        it->second += prod;
    }
  }
  for (auto it = r.coeffs.begin(); it != r.coeffs.end();)
    it = it->second.is_zero() ? r.coeffs.erase(it) : std::next(it);
  return r;
}

TruncatedSeries operator*(const TruncatedSeries& A, const CycloElem& s) {
  TruncatedSeries r = A;
  for (auto& [e, c] : r.coeffs) c = c * s;
  for (auto it = r.coeffs.begin(); it != r.coeffs.end();)
    it = it->second.is_zero() ? r.coeffs.erase(it) : std::next(it);
  return r;
}

TruncatedSeries series_exp(const TruncatedSeries& A) {
  std::vector<int> zero(A.nvars, 0);
  auto it = A.coeffs.find(zero);
  if (it != A.coeffs.end() && !it->second.is_zero()) fail("DomainError", "exp of series with constant term");
  TruncatedSeries result = series_const(A.nvars, A.max_total_degree, cyclo_const(A.M, 1));
  TruncatedSeries term = result;
  for (int k = 1; k <= A.max_total_degree; ++k) {
    term = term * A * cyclo_const(A.M, Q(1, k));
    result = result + term;
  }
  return result;
}

TruncatedSeries series_inverse(const TruncatedSeries& A) {
  std::vector<int> zero(A.nvars, 0);
  auto it = A.coeffs.find(zero);
  if (it == A.coeffs.end()) fail("DivisionByZero", "series with zero constant term");
  CycloElem a0inv = invert(it->second);
  // A = a0 (1 + B)
  TruncatedSeries B = A * a0inv;
  B.coeffs.erase(zero);
  TruncatedSeries negB = B * cyclo_const(A.M, -1);
  TruncatedSeries result = series_const(A.nvars, A.max_total_degree, cyclo_const(A.M, 1));
  TruncatedSeries term = result;
  for (int k = 1; k <= A.max_total_degree; ++k) {
    term = term * negB;
    result = result + term;
  }
  return result * a0inv;
}

CycloElem series_coefficient(const TruncatedSeries& F, const std::vector<int>& target) {
  if (static_cast<int>(target.size()) != F.nvars) fail("TruncationExceeded", "target arity mismatch");
  int deg = std::accumulate(target.begin(), target.end(), 0);
  if (deg > F.max_total_degree) fail("TruncationExceeded", "target beyond truncation degree");
  auto it = F.coeffs.find(target);
  if (it == F.coeffs.end()) return cyclo_const(F.M, 0);
  return it->second;
}

}  // namespace iwz
