#include "iwz/numberfield.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "iwz/lattice.hpp"

namespace iwz {

namespace {

Z isqrt(const Z& x) {
  Z r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

Z lcm_z(const Z& a, const Z& b) {
  Z r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Z gcd_z(const Z& a, const Z& b) {
  Z r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Z floor_div(const Z& a, const Z& b) {
  Z r;
  mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

bool squarefree(long D) {
  for (long d = 2; d * d <= D; ++d)
    if (D % (d * d) == 0) return false;
  return true;
}

std::vector<Q> coords(const FieldData& F, const FieldElem& x) {
  if (F.n == 1) return {x.a};
  return {x.a, x.b};
}

FieldElem from_coords(const std::vector<Z>& v, const Z& den) {
  FieldElem r;
  r.a = Q(v[0], den);
  r.a.canonicalize();
  if (v.size() > 1) {
    r.b = Q(v[1], den);
    r.b.canonicalize();
  }
  return r;
}

IdealHNF from_echelon(int n, const std::vector<std::vector<Z>>& rows, Z den) {
  IdealHNF I;
  I.n = n;
  if (n == 1) {
    I.a = rows[0][0];
    I.b = 0;
    I.c = 1;
  } else {
    I.a = rows[0][0];
    I.b = rows[1][0];
    I.c = rows[1][1];
  }
  Z g = gcd_z(gcd_z(gcd_z(den, I.a), I.b), n == 2 ? I.c : Z(0));
  if (g > 1) {
    den /= g;
    I.a /= g;
    I.b /= g;
    if (n == 2) I.c /= g;
  }
  I.den = den;
  return I;
}

// sign of A + B*sqrt(D)
int sign_surd(const Q& A, const Q& B, long D) {
  int sa = sgn(A), sb = sgn(B);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  Q diff = A * A - B * B * D;
  int sd = sgn(diff);
  return sa > 0 ? sd : -sd;
}

}  // namespace

std::vector<std::vector<Z>> IdealHNF::matrix() const {
  if (n == 1) return {{a}};
  return {{a, 0}, {b, c}};
}

FieldElem fe(const Q& a, const Q& b) { return FieldElem{a, b}; }
FieldElem add(const FieldElem& x, const FieldElem& y) { return {x.a + y.a, x.b + y.b}; }
FieldElem sub(const FieldElem& x, const FieldElem& y) { return {x.a - y.a, x.b - y.b}; }
FieldElem neg(const FieldElem& x) { return {-x.a, -x.b}; }
FieldElem scale(const FieldElem& x, const Q& s) { return {x.a * s, x.b * s}; }

FieldElem mul(const FieldData& F, const FieldElem& x, const FieldElem& y) {
  if (F.n == 1) return {x.a * y.a, 0};
  Q bd = x.b * y.b;
  return {x.a * y.a + bd * Q(F.m0), x.a * y.b + x.b * y.a + bd * Q(F.m1)};
}

FieldElem conj(const FieldData& F, const FieldElem& x) {
  if (F.n == 1) return x;
  // omega' = m1 - omega
  return {x.a + x.b * Q(F.m1), -x.b};
}

Q trace(const FieldData& F, const FieldElem& x) {
  if (F.n == 1) return x.a;
  return 2 * x.a + x.b * Q(F.m1);
}

Q norm(const FieldData& F, const FieldElem& x) {
  if (F.n == 1) return x.a;
  return x.a * x.a + x.a * x.b * Q(F.m1) - x.b * x.b * Q(F.m0);
}

FieldElem inv(const FieldData& F, const FieldElem& x) {
  Q nx = norm(F, x);
  if (nx == 0) fail("DivisionByZero", "inverse of zero field element");
  return scale(conj(F, x), 1 / nx);
}

FieldElem pow(const FieldData& F, const FieldElem& x, long e) {
  FieldElem base = e < 0 ? inv(F, x) : x;
  unsigned long k = e < 0 ? -e : e;
  FieldElem r = fe(1);
  while (k) {
    if (k & 1) r = mul(F, r, base);
    base = mul(F, base, base);
    k >>= 1;
  }
  return r;
}

int sign_at(const FieldData& F, const FieldElem& x, int i) {
  if (F.n == 1) return sgn(x.a);
  Q A = F.half ? x.a + x.b / 2 : x.a;
  Q B = F.half ? x.b / 2 : x.b;
  if (i == 1) B = -B;
  return sign_surd(A, B, F.D);
}

bool is_totally_positive(const FieldData& F, const FieldElem& x) {
  for (int i = 0; i < F.n; ++i)
    if (sign_at(F, x, i) <= 0) return false;
  return true;
}

double embed(const FieldData& F, const FieldElem& x, int i) {
  if (F.n == 1) return x.a.get_d();
  double s = std::sqrt(static_cast<double>(F.D));
  double w = F.half ? (1.0 + (i == 0 ? s : -s)) / 2.0 : (i == 0 ? s : -s);
  return x.a.get_d() + x.b.get_d() * w;
}

FieldElem sqrt_d(const FieldData& F) {
  if (F.n == 1) return fe(1);
  return F.half ? fe(-1, 2) : fe(0, 1);
}

bool is_integral(const FieldElem& x) { return x.a.get_den() == 1 && x.b.get_den() == 1; }

std::string to_string(const FieldData& F, const FieldElem& x) {
  if (F.n == 1) return to_string(x.a);
  return "[" + to_string(x.a) + "," + to_string(x.b) + "]";
}

IdealHNF unit_ideal(const FieldData& F) {
  IdealHNF I;
  I.n = F.n;
  return I;
}

IdealHNF ideal_from_gens(const FieldData& F, const std::vector<FieldElem>& gens) {
  std::vector<FieldElem> mod_gens;
  for (const auto& g : gens) {
    mod_gens.push_back(g);
    if (F.n == 2) mod_gens.push_back(mul(F, g, F.omega));
  }
  Z den = 1;
  for (const auto& g : mod_gens)
    for (const auto& q : coords(F, g)) den = lcm_z(den, q.get_den());
  std::vector<std::vector<Z>> vecs;
  for (const auto& g : mod_gens) {
    std::vector<Z> v;
    for (const auto& q : coords(F, g)) v.push_back(Z(q * Q(den)));
    vecs.push_back(v);
  }
  Echelon e = echelon(vecs, F.n, false);
  return from_echelon(F.n, e.rows, den);
}

IdealHNF principal(const FieldData& F, const FieldElem& x) {
  if (x.a == 0 && x.b == 0) fail("DivisionByZero", "zero ideal");
  return ideal_from_gens(F, {x});
}

std::vector<FieldElem> ideal_basis(const IdealHNF& I) {
  if (I.n == 1) return {from_coords({I.a}, I.den)};
  return {from_coords({I.a, 0}, I.den), from_coords({I.b, I.c}, I.den)};
}

IdealHNF ideal_mul(const FieldData& F, const IdealHNF& I, const IdealHNF& J) {
  std::vector<FieldElem> gens;
  for (const auto& x : ideal_basis(I))
    for (const auto& y : ideal_basis(J)) gens.push_back(mul(F, x, y));
  return ideal_from_gens(F, gens);
}

IdealHNF ideal_add(const FieldData& F, const IdealHNF& I, const IdealHNF& J) {
  auto gens = ideal_basis(I);
  for (const auto& y : ideal_basis(J)) gens.push_back(y);
  return ideal_from_gens(F, gens);
}

IdealHNF ideal_conj(const FieldData& F, const IdealHNF& I) {
  std::vector<FieldElem> gens;
  for (const auto& x : ideal_basis(I)) gens.push_back(conj(F, x));
  return ideal_from_gens(F, gens);
}

Q ideal_norm(const IdealHNF& I) {
  Q r = I.n == 1 ? Q(I.a) : Q(I.a * I.c);
  Q d = I.den;
  for (int i = 0; i < I.n; ++i) r /= d;
  return r;
}

IdealHNF ideal_inv(const FieldData& F, const IdealHNF& I) {
  if (F.n == 1) return ideal_from_gens(F, {fe(Q(I.den) / Q(I.a))});
  Q nI = ideal_norm(I);
  std::vector<FieldElem> gens;
  for (const auto& x : ideal_basis(I)) gens.push_back(scale(conj(F, x), 1 / nI));
  return ideal_from_gens(F, gens);
}

IdealHNF ideal_pow(const FieldData& F, const IdealHNF& I, int e) {
  IdealHNF base = e < 0 ? ideal_inv(F, I) : I;
  IdealHNF r = unit_ideal(F);
  for (int i = 0; i < std::abs(e); ++i) r = ideal_mul(F, r, base);
  return r;
}

bool ideal_contains(const FieldData& F, const IdealHNF& I, const FieldElem& x) {
  Q xa = x.a * Q(I.den), xb = x.b * Q(I.den);
  if (xa.get_den() != 1 || xb.get_den() != 1) return false;
  Z X = xa.get_num(), Y = xb.get_num();
  if (F.n == 1) return Y == 0 && X % I.a == 0;
  if (Y % I.c != 0) return false;
  Z k = Y / I.c;
  return (X - k * I.b) % I.a == 0;
}

bool ideal_is_integral(const IdealHNF& I) { return I.den == 1; }

Z ideal_min_integer(const IdealHNF& I) {
  if (I.den != 1) fail("DomainError", "ideal_min_integer on fractional ideal");
  return I.a;
}

bool coprime(const FieldData& F, const IdealHNF& I, const IdealHNF& J) {
  return ideal_add(F, I, J) == unit_ideal(F);
}

std::string split_type(const FieldData& F, long ell) {
  if (F.n == 1) return "split";
  int roots = 0;
  Z m0 = F.m0 % ell, m1 = F.m1 % ell;
  for (long r = 0; r < ell; ++r) {
    Z v = (Z(r) * r - m1 * r - m0) % ell;
    if (v == 0) ++roots;
  }
  if (roots == 0) return "inert";
  if (F.disc % ell == 0) return "ramified";
  return "split";
}

std::vector<PrimeIdeal> primes_above(const FieldData& F, long ell) {
  std::vector<PrimeIdeal> out;
  if (F.n == 1) {
    IdealHNF I = unit_ideal(F);
    I.a = ell;
    out.push_back({I, ell, 1});
    return out;
  }
  Z m0 = F.m0, m1 = F.m1;
  for (long r = 0; r < ell; ++r) {
    Z v = Z(r) * r - m1 * r - m0;
    if (v % ell == 0) {
      // (ell, omega - r)
      out.push_back({ideal_from_gens(F, {fe(ell), fe(-r, 1)}), ell, 1});
    }
  }
  if (out.empty()) {
    out.push_back({principal(F, fe(ell)), ell, 2});
  } else if (out.size() == 2 && out[0].ideal == out[1].ideal) {
    out.pop_back();
  }
  return out;
}

std::vector<PrimeIdeal> primes_dividing(const FieldData& F, const IdealHNF& f) {
  std::vector<PrimeIdeal> out;
  Z N = Z(ideal_norm(f));
  for (long ell = 2; Z(ell) <= N; ++ell) {
    if (!is_prime(ell) || N % ell != 0) continue;
    for (const auto& P : primes_above(F, ell))
      if (ideal_add(F, f, P.ideal) == P.ideal) out.push_back(P);
  }
  return out;
}

std::vector<IdealHNF> ideals_of_norm(const FieldData& F, long m) {
  std::vector<IdealHNF> out;
  if (F.n == 1) {
    IdealHNF I = unit_ideal(F);
    I.a = m;
    out.push_back(I);
    return out;
  }
  for (long c = 1; c <= m; ++c) {
    if (m % c != 0) continue;
    long a = m / c;
    if (a % c != 0) continue;
    for (long b = 0; b < a; b += c) {
      IdealHNF I;
      I.n = 2;
      I.a = a;
      I.b = b;
      I.c = c;
      // closure under omega
      FieldElem w1 = mul(F, fe(a), F.omega);
      FieldElem w2 = mul(F, fe(b, c), F.omega);
      if (ideal_contains(F, I, w1) && ideal_contains(F, I, w2)) out.push_back(I);
    }
  }
  return out;
}

std::optional<FieldElem> find_generator(const FieldData& F, const IdealHNF& I) {
  if (I.den != 1) {
    IdealHNF J = I;
    J.den = 1;
    auto g = find_generator(F, J);
    if (!g) return g;
    return scale(*g, Q(1) / Q(I.den));
  }
  Z m = Z(ideal_norm(I));
  if (F.n == 1) return fe(Q(I.a));
  double eps = embed(F, F.eps0, 0);
  double B = std::sqrt(m.get_d()) * eps * 1.000001 + 1e-9;
  double s = std::sqrt(static_cast<double>(F.D));
  double w0 = embed(F, F.omega, 0), w1 = embed(F, F.omega, 1);
  long ymax = static_cast<long>(std::ceil(2 * B / s)) + 1;
  long cc = I.c.get_si();
  for (long j = -(ymax / cc) - 1; j <= ymax / cc + 1; ++j) {
    Z y = Z(j) * I.c;
    double yd = y.get_d();
    double lo = std::max(-B - yd * w0, -B - yd * w1);
    double hi = std::min(B - yd * w0, B - yd * w1);
    if (lo > hi) continue;
    // x ≡ j*b (mod a)
    Z base = Z(j) * I.b;
    Z start = base + I.a * Z(static_cast<long>(std::floor((lo - base.get_d()) / I.a.get_d())) - 1);
    for (Z x = start; x.get_d() <= hi + 1; x += I.a) {
      FieldElem g = fe(Q(x), Q(y));
      if (abs(norm(F, g)) == Q(m)) return g;
    }
  }
  return std::nullopt;
}

std::optional<FieldElem> totally_positive_generator(const FieldData& F, const IdealHNF& I) {
  auto g = find_generator(F, I);
  if (!g) return g;
  for (const auto& u : {fe(1), fe(-1), F.eps0, neg(F.eps0)}) {
    FieldElem h = mul(F, *g, u);
    if (is_totally_positive(F, h)) return h;
  }
  return std::nullopt;
}

FieldData make_field(long D) {
  FieldData F;
  if (D < 1) fail("NotSquarefree", "D must be a positive squarefree integer");
  F.D = D;
  if (D == 1) {
    F.n = 1;
    F.disc = 1;
    F.omega = fe(1);
    F.eps0 = fe(1);
    F.different = unit_ideal(F);
    return F;
  }
  if (!squarefree(D)) fail("NotSquarefree", "D=" + std::to_string(D) + " is not squarefree");
  F.n = 2;
  F.half = (D % 4 == 1);
  F.m1 = F.half ? 1 : 0;
  F.m0 = F.half ? (D - 1) / 4 : D;
  F.disc = F.half ? D : 4 * D;
  F.omega = fe(0, 1);

  // continued fraction of omega = (P + sqrt D)/Qd; convergent p/q gives p - q*omega
  Z P = F.half ? 1 : 0, Qd = F.half ? 2 : 1;
  Z s = isqrt(Z(D));
  Z p1 = 1, p2 = 0, q1 = 0, q2 = 1;
  bool found = false;
  for (int it = 0; it < 100000 && !found; ++it) {
    Z a = Qd > 0 ? floor_div(P + s, Qd) : -(floor_div(P + s, -Qd) + 1);
    Z p = a * p1 + p2, q = a * q1 + q2;
    p2 = p1;
    p1 = p;
    q2 = q1;
    q1 = q;
    FieldElem alpha = fe(Q(p), Q(-q));
    if (abs(norm(F, alpha)) == 1) {
      FieldElem e = conj(F, alpha);
      if (embed(F, e, 0) < 0) e = neg(e);
      F.eps0 = e;
      found = true;
    }
    Z P2 = a * Qd - P;
    Qd = (Z(D) - P2 * P2) / Qd;
    P = P2;
  }
  if (!found) fail("SearchExhausted", "fundamental unit not found");
  F.different = principal(F, F.half ? sqrt_d(F) : scale(sqrt_d(F), 2));

  // class number one: every prime of norm below the Minkowski bound is principal
  double mink = std::sqrt(static_cast<double>(F.disc)) / 2.0;
  for (long ell = 2; ell <= static_cast<long>(mink); ++ell) {
    if (!is_prime(ell)) continue;
    for (const auto& P : primes_above(F, ell)) {
      if (P.degree == 2) continue;
      if (!find_generator(F, P.ideal))
        fail("ClassNumberNotOne", "prime above " + std::to_string(ell) + " is not principal in Q(sqrt " +
                                      std::to_string(D) + ")");
    }
  }
  return F;
}

FieldElem totally_positive_unit(const FieldData& F) {
  if (F.n == 1) return fe(1);
  if (norm(F, F.eps0) == 1 && is_totally_positive(F, F.eps0)) return F.eps0;
  return mul(F, F.eps0, F.eps0);
}

ResidueRing residue_ring(const FieldData& F, const IdealHNF& f) {
  if (f.den != 1) fail("DomainError", "modulus must be integral");
  ResidueRing R;
  R.n = F.n;
  R.a = f.a.get_si();
  R.b = F.n == 2 ? f.b.get_si() : 0;
  R.c = F.n == 2 ? f.c.get_si() : 1;
  R.m0 = F.m0;
  R.m1 = F.m1;
  return R;
}

std::pair<int64_t, int64_t> ResidueRing::reduce(const Z& x, const Z& y) const {
  if (n == 1) return {z_mod(x, a), 0};
  Z q = floor_div(y, Z(c));
  Z y2 = y - q * c;
  Z x2 = x - q * b;
  return {z_mod(x2, a), y2.get_si()};
}

std::pair<int64_t, int64_t> ResidueRing::mul(std::pair<int64_t, int64_t> u, std::pair<int64_t, int64_t> v) const {
  if (n == 1) return {mulmod(u.first, v.first, a), 0};
  Z x1 = u.first, y1 = u.second, x2 = v.first, y2 = v.second;
  Z yy = y1 * y2;
  return reduce(x1 * x2 + yy * m0, x1 * y2 + x2 * y1 + yy * m1);
}

std::pair<FieldElem, long> eplus_f_generator(const FieldData& F, const IdealHNF& f) {
  if (F.n == 1) return {fe(1), 1};
  FieldElem ep = totally_positive_unit(F);
  ResidueRing R = residue_ring(F, f);
  auto base = R.reduce(ep.a.get_num(), ep.b.get_num());
  auto one = R.reduce(1, 0);
  auto cur = base;
  long t = 1;
  while (cur != one) {
    cur = R.mul(cur, base);
    ++t;
    if (t > 4 * R.size() + 4) fail("SearchExhausted", "order of eps_+ mod f");
  }
  return {pow(F, ep, t), t};
}

int sign_bits(const FieldData& F, const FieldElem& x) {
  int s = 0;
  for (int i = 0; i < F.n; ++i)
    if (sign_at(F, x, i) < 0) s |= (1 << i);
  return s;
}

uint64_t class_key(const RayClassData& R, std::pair<int64_t, int64_t> res, int signs) {
  uint64_t best = UINT64_MAX;
  for (const auto& [ures, us] : R.unit_images) {
    auto r = R.ring.mul(res, ures);
    uint64_t k = (static_cast<uint64_t>(R.ring.index(r)) << R.n) | static_cast<uint64_t>(signs ^ us);
    best = std::min(best, k);
  }
  return best;
}

bool is_unit_mod(const RayClassData& R, const FieldElem& x) {
  for (const auto& P : R.bad_primes) {
    // x in P ?
    const IdealHNF& I = P.ideal;
    Z X = x.a.get_num(), Y = x.b.get_num();
    bool in;
    if (R.n == 1) {
      in = X % I.a == 0;
    } else {
      in = (Y % I.c == 0) && ((X - (Y / I.c) * I.b) % I.a == 0);
    }
    if (in) return false;
  }
  return true;
}

namespace {

std::pair<std::pair<int64_t, int64_t>, int> group_elem(const FieldData& F, const RayClassData& R,
                                                        const FieldElem& x) {
  // x may have a denominator coprime to f
  Z d = lcm_z(x.a.get_den(), x.b.get_den());
  FieldElem y = scale(x, Q(d));
  auto res = R.ring.reduce(y.a.get_num(), y.b.get_num());
  if (d != 1) {
    int64_t dinv = invmod(z_mod(d, R.ring.a), R.ring.a);
    res = R.ring.mul(res, {dinv, 0});
  }
  return {res, sign_bits(F, x)};
}

}  // namespace

int class_of_element(const FieldData& F, const RayClassData& R, const FieldElem& x) {
  auto [res, s] = group_elem(F, R, x);
  auto it = R.key_to_class.find(class_key(R, res, s));
  if (it == R.key_to_class.end()) fail("DomainError", "element not coprime to modulus");
  return it->second;
}

int class_of_ideal(const FieldData& F, const RayClassData& R, const IdealHNF& I) {
  auto g = find_generator(F, I);
  if (!g) fail("ClassNumberNotOne", "ideal has no generator");
  return class_of_element(F, R, *g);
}

int RayClassData::inverse(int i) const {
  for (size_t j = 0; j < reps.size(); ++j)
    if (mul_table[i][j] == identity()) return static_cast<int>(j);
  fail("DomainError", "no inverse in ray class table");
}

RayClassData ray_class_data(const FieldData& F, const IdealHNF& f, const RayOptions& opt) {
  RayClassData R;
  R.modulus = f;
  R.n = F.n;
  Z Nf = Z(ideal_norm(f));
  if (Nf > opt.max_residues) fail("ModulusTooLarge", "N(f)=" + Nf.get_str() + " exceeds cap");
  R.ring = residue_ring(F, f);
  R.bad_primes = primes_dividing(F, f);

  // |(O/f)^*|
  Q units = Q(Nf);
  for (const auto& P : R.bad_primes) {
    Q np = P.degree == 1 ? Q(P.ell) : Q(P.ell * P.ell);
    units *= (1 - 1 / np);
  }
  R.group_order = Z(units).get_si() << F.n;

  // subgroup generated by images of -1 and eps0
  std::vector<std::pair<std::pair<int64_t, int64_t>, int>> gens;
  gens.push_back({R.ring.reduce(-1, 0), (1 << F.n) - 1});
  if (F.n == 2) gens.push_back({R.ring.reduce(F.eps0.a.get_num(), F.eps0.b.get_num()), sign_bits(F, F.eps0)});
  std::set<std::pair<std::pair<int64_t, int64_t>, int>> U;
  std::vector<std::pair<std::pair<int64_t, int64_t>, int>> frontier{{R.ring.reduce(1, 0), 0}};
  U.insert(frontier[0]);
  while (!frontier.empty()) {
    std::vector<std::pair<std::pair<int64_t, int64_t>, int>> next;
    for (const auto& u : frontier)
      for (const auto& g : gens) {
        std::pair<std::pair<int64_t, int64_t>, int> v{R.ring.mul(u.first, g.first), u.second ^ g.second};
        if (U.insert(v).second) next.push_back(v);
      }
    frontier = std::move(next);
  }
  R.unit_images.assign(U.begin(), U.end());
  int64_t nclasses = R.group_order / static_cast<int64_t>(U.size());

  for (long m = 1; static_cast<int64_t>(R.reps.size()) < nclasses; ++m) {
    if (m > opt.max_norm) fail("ModulusTooLarge", "representative search exceeded norm cap");
    for (const auto& I : ideals_of_norm(F, m)) {
      if (!coprime(F, I, f)) continue;
      auto g = find_generator(F, I);
      if (!g) fail("ClassNumberNotOne", "non-principal ideal of norm " + std::to_string(m));
      auto [res, s] = group_elem(F, R, *g);
      uint64_t key = class_key(R, res, s);
      if (R.key_to_class.count(key)) continue;
      R.key_to_class[key] = static_cast<int>(R.reps.size());
      R.reps.push_back(I);
      R.rep_gens.push_back(*g);
    }
  }

  size_t h = R.reps.size();
  R.mul_table.assign(h, std::vector<int>(h));
  for (size_t i = 0; i < h; ++i)
    for (size_t j = 0; j < h; ++j)
      R.mul_table[i][j] = class_of_element(F, R, mul(F, R.rep_gens[i], R.rep_gens[j]));

  auto [eg, t] = eplus_f_generator(F, f);
  R.eplus_gen = eg;
  R.eplus_exp = t;
  return R;
}

Character trivial_character(const RayClassData& R) {
  Character c;
  c.k.assign(R.size(), 0);
  c.M = 1;
  c.even = true;
  return c;
}

std::vector<Character> list_characters(const RayClassData& R, int64_t max_order) {
  const size_t h = R.size();
  const int e = R.identity();
  auto power = [&](int g, int64_t k) {
    int r = e;
    for (int64_t i = 0; i < k; ++i) r = R.mul_table[r][g];
    return r;
  };
  // exponent of the group
  int64_t E = 1;
  for (size_t g = 0; g < h; ++g) {
    int64_t o = 1;
    int x = static_cast<int>(g);
    while (x != e) {
      x = R.mul_table[x][g];
      ++o;
    }
    E = std::lcm(E, o);
  }

  // characters as exponent vectors mod E, built generator by generator
  std::vector<char> inH(h, 0);
  inH[e] = 1;
  std::vector<int> H{e};
  std::vector<std::vector<int64_t>> chars{std::vector<int64_t>(h, -1)};
  chars[0][e] = 0;
  for (size_t g = 0; g < h; ++g) {
    if (inH[g]) continue;
    int64_t d = 1;
    int x = static_cast<int>(g);
    while (!inH[x]) {
      x = R.mul_table[x][g];
      ++d;
    }
    int hpow = x;  // g^d in H
    std::vector<int> newH;
    std::vector<std::pair<int, int>> decomp;  // (h, j) for each new element
    for (int64_t j = 0; j < d; ++j) {
      int gj = power(static_cast<int>(g), j);
      for (int hh : H) {
        int y = R.mul_table[hh][gj];
        newH.push_back(y);
        decomp.push_back({hh, static_cast<int>(j)});
      }
    }
    std::vector<std::vector<int64_t>> next;
    for (const auto& chi : chars) {
      int64_t target = chi[hpow];
      for (int64_t xv = 0; xv < E; ++xv) {
        if ((d * xv - target) % E != 0) continue;
        std::vector<int64_t> c2 = chi;
        for (size_t i = 0; i < newH.size(); ++i)
          c2[newH[i]] = (chi[decomp[i].first] + decomp[i].second * xv) % E;
        next.push_back(c2);
      }
    }
    chars = std::move(next);
    H = newH;
    for (int y : H) inH[y] = 1;
  }

  // classes of (1, s) for all sign vectors s
  std::vector<int> sign_classes;
  for (int s = 0; s < (1 << R.n); ++s) {
    auto it = R.key_to_class.find(class_key(R, R.ring.reduce(1, 0), s));
    if (it != R.key_to_class.end()) sign_classes.push_back(it->second);
  }

  std::vector<Character> out;
  for (const auto& chi : chars) {
    int64_t g = E;
    for (auto v : chi) g = std::gcd(g, v);
    int64_t M = E / g;
    if (M > max_order) continue;
    Character c;
    c.M = M;
    for (auto v : chi) c.k.push_back(v / g);
    c.even = true;
    for (int sc : sign_classes)
      if (c.k[sc] != 0) c.even = false;
    out.push_back(c);
  }
  std::sort(out.begin(), out.end(), [](const Character& a, const Character& b) {
    if (a.M != b.M) return a.M < b.M;
    return a.k < b.k;
  });
  return out;
}

std::vector<Character> list_even_characters(const RayClassData& R, int64_t max_order) {
  std::vector<Character> out;
  for (auto& c : list_characters(R, max_order))
    if (c.even) out.push_back(c);
  return out;
}

}  // namespace iwz
