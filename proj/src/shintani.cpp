#include "iwz/shintani.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "iwz/lattice.hpp"

namespace iwz {

namespace {

std::vector<Z> int_coords(const FieldData& F, const FieldElem& x) {
  if (!is_integral(x)) fail("DomainError", "expected an integral element");
  if (F.n == 1) return {x.a.get_num()};
  return {x.a.get_num(), x.b.get_num()};
}

// smallest positive integer m with m*w in I
Z min_multiplier(const FieldData& F, const FieldElem& w, const IdealHNF& I) {
  auto B = ideal_basis(I);
  Cone C{B, std::vector<bool>(F.n, true)};
  auto t = cone_coords(F, C, w);
  Z m = 1;
  for (const auto& q : t) mpz_lcm(m.get_mpz_t(), m.get_mpz_t(), q.get_den().get_mpz_t());
  return m;
}

FieldElem p_normalize(const FieldData& F, FieldElem v, const ConeOptions& opt) {
  if (opt.rho < 0) return v;
  Q tr = trace(F, v);
  int e = vp(tr, opt.p);
  while (e < opt.rho) {
    v = scale(v, opt.p);
    ++e;
  }
  if (opt.exact_trace && e != opt.rho)
    fail("TraceNormalizationFailed", "v_p(Tr v) = " + std::to_string(e) + " exceeds rho = " + std::to_string(opt.rho));
  return v;
}

Q reduce_coord(const Q& t, bool zero_ok) {
  Q r = frac(t);
  if (!zero_ok && r == 0) r = 1;
  return r;
}

}  // namespace

std::vector<Q> cone_coords(const FieldData& F, const Cone& C, const FieldElem& y) {
  if (F.n == 1) return {y.a / C.basis[0].a};
  const auto& v1 = C.basis[0];
  const auto& v2 = C.basis[1];
  Q det = v1.a * v2.b - v2.a * v1.b;
  if (det == 0) fail("DomainError", "degenerate cone");
  Q t1 = (y.a * v2.b - v2.a * y.b) / det;
  Q t2 = (v1.a * y.b - y.a * v1.b) / det;
  return {t1, t2};
}

bool in_cone(const FieldData& F, const Cone& C, const FieldElem& y) {
  auto t = cone_coords(F, C, y);
  for (size_t k = 0; k < t.size(); ++k) {
    if (t[k] < 0) return false;
    if (t[k] == 0 && !C.zero_ok[k]) return false;
  }
  return true;
}

ConeDecomposition cone_decomposition(const FieldData& F, const IdealHNF& f, const IdealHNF& scale_into,
                                     const ConeOptions& opt) {
  if (F.n != 1 && F.n != 2) fail("UnsupportedDegree", "only degrees 1 and 2");
  ConeDecomposition dec;
  dec.F = F;
  dec.modulus = f;
  dec.scale_into = scale_into;
  if (F.n == 1) {
    dec.unit = fe(1);
    dec.unit_exp = 1;
    FieldElem v = fe(Q(min_multiplier(F, fe(1), scale_into)));
    v = p_normalize(F, v, opt);
    dec.cones.push_back({{v}, {opt.flip_flags}});
    return dec;
  }
  auto [gen, t] = eplus_f_generator(F, f);
  dec.unit = gen;
  dec.unit_exp = t;
  FieldElem eps = totally_positive_unit(F);
  std::vector<std::vector<FieldElem>> raw;
  if (opt.subdivide) {
    FieldElem e = fe(1);
    for (long i = 0; i < t; ++i) {
      FieldElem next = mul(F, e, eps);
      raw.push_back({e, next});
      e = next;
    }
  } else {
    raw.push_back({fe(1), gen});
  }
  std::optional<FieldElem> beta;
  if (opt.mode == ScaleMode::Generator) beta = totally_positive_generator(F, scale_into);
  for (auto& b : raw) {
    Cone C;
    for (auto& w : b) {
      FieldElem v = beta ? mul(F, *beta, w) : scale(w, Q(min_multiplier(F, w, scale_into)));
      C.basis.push_back(p_normalize(F, v, opt));
    }
    C.zero_ok = opt.flip_flags ? std::vector<bool>{false, true} : std::vector<bool>{true, false};
    dec.cones.push_back(C);
  }
  return dec;
}

ConeDecomposition scale_cones(const ConeDecomposition& dec, const FieldElem& g, bool flip_flags) {
  ConeDecomposition out = dec;
  for (auto& C : out.cones) {
    for (auto& v : C.basis) v = mul(dec.F, g, v);
    if (flip_flags)
      for (size_t k = 0; k < C.zero_ok.size(); ++k) C.zero_ok[k] = !C.zero_ok[k];
  }
  return out;
}

int cover_count(const ConeDecomposition& dec, const FieldElem& w, int bound) {
  const auto& F = dec.F;
  if (F.n == 1) {
    int cnt = 0;
    for (const auto& C : dec.cones) cnt += in_cone(F, C, w) ? 1 : 0;
    return cnt;
  }
  // translates far from log(s1/s2) cannot contain w
  double lu = std::log(embed(F, dec.unit, 0));
  double r = std::log(embed(F, w, 0) / embed(F, w, 1));
  int e0 = static_cast<int>(std::floor(r / (2 * lu)));
  int cnt = 0;
  for (int e = std::max(-bound, e0 - 2); e <= std::min(bound, e0 + 2); ++e) {
    FieldElem y = mul(F, pow(F, dec.unit, -e), w);
    for (const auto& C : dec.cones) cnt += in_cone(F, C, y) ? 1 : 0;
  }
  return cnt;
}

bool cover_test(const ConeDecomposition& dec, int random_points, uint64_t seed) {
  const auto& F = dec.F;
  std::vector<FieldElem> pts;
  if (F.n == 1) {
    for (int a = 1; a <= 20; ++a) pts.push_back(fe(Q(a) / 3));
  } else {
    for (int a = -12; a <= 12; ++a)
      for (int b = -12; b <= 12; ++b) {
        FieldElem w = fe(a, b);
        if (is_totally_positive(F, w)) pts.push_back(w);
      }
    // unit powers sit on cone boundaries
    for (long i = -3; i <= 3; ++i) pts.push_back(pow(F, totally_positive_unit(F), i));
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-200, 200), den(1, 50);
  int made = 0;
  while (made < random_points) {
    FieldElem w = fe(Q(num(rng), den(rng)), F.n == 2 ? Q(num(rng), den(rng)) : Q(0));
    w.a.canonicalize();
    w.b.canonicalize();
    if (!is_totally_positive(F, w)) continue;
    pts.push_back(w);
    ++made;
  }
  for (const auto& w : pts)
    if (cover_count(dec, w, 1000) != 1) return false;
  return true;
}

FieldElem one_mod(const FieldData& F, const IdealHNF& a, const IdealHNF& f) {
  auto A = ideal_basis(a), B = ideal_basis(f);
  std::vector<std::vector<Z>> gens;
  for (auto& g : A) gens.push_back(int_coords(F, g));
  for (auto& g : B) gens.push_back(int_coords(F, g));
  Echelon e = echelon(gens, F.n, true);
  std::vector<Z> target(F.n, 0);
  target[0] = 1;
  std::vector<Z> combo;
  if (!solve_in_span(e, target, combo)) fail("DomainError", "ideal not coprime to modulus");
  FieldElem y = fe(0);
  for (size_t i = 0; i < A.size(); ++i) y = add(y, scale(A[i], Q(combo[i])));
  return y;
}

std::vector<ResidueSet> enumerate_residues(const ConeDecomposition& dec, const IdealHNF& a) {
  const auto& F = dec.F;
  const int n = F.n;
  FieldElem y0 = one_mod(F, a, dec.modulus);
  IdealHNF af = ideal_mul(F, a, dec.modulus);
  auto G = ideal_basis(af);
  std::vector<ResidueSet> out;
  for (size_t j = 0; j < dec.cones.size(); ++j) {
    const Cone& C = dec.cones[j];
    std::vector<std::vector<Q>> gc;
    Z d = 1;
    for (auto& g : G) {
      gc.push_back(cone_coords(F, C, g));
      for (auto& q : gc.back()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), q.get_den().get_mpz_t());
    }
    std::vector<std::vector<Z>> gens;
    for (auto& v : gc) {
      std::vector<Z> row;
      for (auto& q : v) row.push_back(Z(q * Q(d)));
      gens.push_back(row);
    }
    for (int k = 0; k < n; ++k) {
      std::vector<Z> row(n, 0);
      row[k] = d;
      gens.push_back(row);
    }
    Echelon e = echelon(gens, n, false);
    std::vector<long> range(n);
    for (int k = 0; k < n; ++k) {
      Z r = d / e.rows[k][k];
      if (r > 100000000) fail("ModulusTooLarge", "residue enumeration too large");
      range[k] = r.get_si();
    }
    auto t0 = cone_coords(F, C, y0);
    ResidueSet rs;
    rs.cone = static_cast<int>(j);
    rs.a = a;
    std::vector<long> cnt(n, 0);
    while (true) {
      std::vector<Q> t = t0;
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
          Q step(Z(cnt[k]) * e.rows[k][i], d);
          step.canonicalize();
          t[i] += step;
        }
      for (int i = 0; i < n; ++i) t[i] = reduce_coord(t[i], C.zero_ok[i]);
      FieldElem x = fe(0);
      for (int i = 0; i < n; ++i) x = add(x, scale(C.basis[i], t[i]));
      if (!ideal_contains(F, a, x) || !ideal_contains(F, dec.modulus, sub(x, fe(1))))
        fail("DomainError", "residue check failed");
      rs.xs.push_back({t, x});
      int k = 0;
      while (k < n && ++cnt[k] == range[k]) cnt[k++] = 0;
      if (k == n) break;
    }
    std::sort(rs.xs.begin(), rs.xs.end(), [](const Residue& u, const Residue& v) { return u.coords < v.coords; });
    out.push_back(std::move(rs));
  }
  return out;
}

int64_t twist_exponent(const FieldData& F, const TwistData& tw, const FieldElem& y) {
  Q t = trace(F, mul(F, tw.nu, y)) * Q(tw.c);
  if (t.get_den() != 1) fail("DomainError", "Tr(nu y) not in (1/c)Z");
  return z_mod(t.get_num(), tw.c);
}

TwistData twist_from_prime(const FieldData& F, const PrimeIdeal& P) {
  TwistData tw;
  tw.c_ideal = P.ideal;
  tw.c = P.ell;
  IdealHNF J = ideal_inv(F, ideal_mul(F, F.different, P.ideal));
  auto B = ideal_basis(J);
  std::vector<std::vector<Z>> gens;
  for (auto& b : B) {
    Q t = trace(F, b) * Q(P.ell);
    if (t.get_den() != 1) fail("DomainError", "trace of inverse different not in (1/c)Z");
    gens.push_back({t.get_num()});
  }
  Echelon e = echelon(gens, 1, true);
  std::vector<Z> combo;
  if (!solve_in_span(e, {Z(1)}, combo)) fail("DomainError", "no element of trace 1/c");
  tw.nu = fe(0);
  for (size_t i = 0; i < B.size(); ++i) tw.nu = add(tw.nu, scale(B[i], Q(combo[i])));
  tw.trace_nu = trace(F, tw.nu);
  return tw;
}

std::optional<std::string> twist_violation(const FieldData& F, const IdealHNF& f, const TwistData& tw,
                                           const std::vector<ConeDecomposition>& decs,
                                           const std::vector<std::vector<ResidueSet>>& residues) {
  long ell = tw.c;
  if (F.disc % ell == 0) return "c divides the discriminant";
  if (ideal_norm(tw.c_ideal) != Q(ell)) return "O/c is not Z/cZ";
  if (!coprime(F, tw.c_ideal, f)) return "c is not coprime to f";
  for (const auto& dec : decs)
    for (const auto& C : dec.cones)
      for (const auto& v : C.basis)
        if (ideal_contains(F, tw.c_ideal, v)) return "a cone generator lies in c";
  for (const auto& rsv : residues)
    for (const auto& rs : rsv)
      for (const auto& x : rs.xs)
        for (const auto& q : x.coords)
          if (q.get_den() % ell == 0) return "c divides a residue denominator";
  return std::nullopt;
}

TwistData choose_twist(const FieldData& F, const IdealHNF& f, const std::vector<ConeDecomposition>& decs,
                       const std::vector<std::vector<ResidueSet>>& residues, const TwistOptions& opt) {
  for (long ell = opt.start; ell <= opt.bound; ++ell) {
    if (!is_prime(ell) || ell == opt.exclude) continue;
    if (F.n == 2 && split_type(F, ell) != "split") continue;
    for (const auto& P : primes_above(F, ell)) {
      if (P.degree != 1) continue;
      TwistData tw = twist_from_prime(F, P);
      if (!twist_violation(F, f, tw, decs, residues)) return tw;
    }
  }
  fail("SearchExhausted", "no admissible twist prime below " + std::to_string(opt.bound));
}

std::vector<ShintaniTerm> shintani_terms(const ConeDecomposition& dec, const std::vector<ResidueSet>& residues) {
  std::vector<ShintaniTerm> out;
  for (const auto& rs : residues)
    for (const auto& x : rs.xs) out.push_back({dec.cones[rs.cone].basis, x.coords, x.x});
  return out;
}

namespace {

// [w^j] 1/(1 - zeta_c^e exp(-w)), j <= deg
std::vector<CycloElem> psi_coeffs(long c, long e, int deg) {
  CycloElem z = root_of_unity(c, e);
  CycloElem inv0 = invert(cyclo_const(c, 1) - z);
  std::vector<CycloElem> g(deg + 1), psi(deg + 1);
  Q fact = 1;
  for (int j = 1; j <= deg; ++j) {
    fact *= j;
    Q s = (j % 2 == 0 ? Q(-1) : Q(1)) / fact;  // -z(-1)^j/j!
    g[j] = z * s;
  }
  psi[0] = inv0;
  for (int j = 1; j <= deg; ++j) {
    CycloElem acc = cyclo_const(c, 0);
    for (int i = 1; i <= j; ++i) acc += g[i] * psi[j - i];
    psi[j] = -(inv0 * acc);
  }
  return psi;
}

// [y1^{m-1} y2^{m-1}] prod_k (y1 v_k + y2 v_k')^{alpha_k}, indexed by alpha_1
std::vector<Q> m_alpha(const FieldData& F, const std::vector<FieldElem>& basis, int m) {
  int deg = F.n * (m - 1);
  if (F.n == 1) {
    Q v = basis[0].a;
    Q r = 1;
    for (int i = 0; i < m - 1; ++i) r *= v;
    return {r};
  }
  auto powers = [&](const FieldElem& x) {
    std::vector<FieldElem> out{fe(1)};
    for (int i = 0; i < deg; ++i) out.push_back(mul(F, out.back(), x));
    return out;
  };
  auto p1 = powers(basis[0]), q1 = powers(conj(F, basis[0]));
  auto p2 = powers(basis[1]), q2 = powers(conj(F, basis[1]));
  std::vector<Q> out(deg + 1);
  for (int a1 = 0; a1 <= deg; ++a1) {
    int a2 = deg - a1;
    FieldElem acc = fe(0);
    for (int i = std::max(0, m - 1 - a2); i <= std::min(a1, m - 1); ++i) {
      int j = m - 1 - i;
      Q coef = Q(binom(a1, i) * binom(a2, j));
      FieldElem t = mul(F, mul(F, p1[i], q1[a1 - i]), mul(F, p2[j], q2[a2 - j]));
      acc = add(acc, scale(t, coef));
    }
    if (acc.b != 0) fail("NotRational", "cone monomial coefficient is irrational");
    out[a1] = acc.a;
  }
  return out;
}

}  // namespace

Q twisted_partial_zeta(const FieldData& F, const IdealHNF& a, const TwistData& tw,
                       const std::vector<ShintaniTerm>& terms, int m) {
  if (m < 1) fail("DomainError", "m must be positive");
  const int n = F.n;
  const int deg = n * (m - 1);
  const long c = tw.c;
  std::map<long, std::vector<CycloElem>> psi;
  auto get_psi = [&](long e) -> const std::vector<CycloElem>& {
    auto it = psi.find(e);
    if (it == psi.end()) it = psi.emplace(e, psi_coeffs(c, e, deg)).first;
    return it->second;
  };
  CycloElem total = cyclo_const(c, 0);
  for (const auto& term : terms) {
    std::vector<long> ek(n);
    for (int k = 0; k < n; ++k) {
      ek[k] = twist_exponent(F, tw, term.basis[k]);
      if (ek[k] == 0) fail("DomainError", "cone generator in c");
    }
    long b = twist_exponent(F, tw, term.x);
    auto M = m_alpha(F, term.basis, m);
    // exp(-x_k w) coefficients
    std::vector<std::vector<Q>> E(n, std::vector<Q>(deg + 1));
    for (int k = 0; k < n; ++k) {
      E[k][0] = 1;
      for (int i = 1; i <= deg; ++i) E[k][i] = E[k][i - 1] * (-term.coords[k]) / i;
    }
    for (long delta = 1; delta < c; ++delta) {
      std::vector<std::vector<CycloElem>> phi(n);
      for (int k = 0; k < n; ++k) {
        const auto& ps = get_psi(mod_floor(delta * ek[k], c));
        phi[k].resize(deg + 1);
        for (int j = 0; j <= deg; ++j) {
          CycloElem acc = cyclo_const(c, 0);
          for (int i = 0; i <= j; ++i) acc += ps[j - i] * E[k][i];
          phi[k][j] = acc;
        }
      }
      CycloElem s = cyclo_const(c, 0);
      if (n == 1) {
        s = phi[0][deg] * M[0];
      } else {
        for (int a1 = 0; a1 <= deg; ++a1)
          if (M[a1] != 0) s += (phi[0][a1] * phi[1][deg - a1]) * M[a1];
      }
      total += root_of_unity(c, mod_floor(delta * b, c)) * s;
    }
  }
  Q r = extract_rational(total);
  Q Na = ideal_norm(a);
  Q pref = 1;
  for (int i = 0; i < m - 1; ++i) pref /= Na;
  Q fm = Q(factorial(m - 1));
  for (int k = 0; k < n; ++k) pref *= fm;
  if ((deg % 2) == 1) pref = -pref;
  return r * pref;
}

UntwistResult untwist(const FieldData& F, const RayClassData& R, const TwistData& tw, const std::vector<Q>& twisted,
                      int m) {
  const size_t H = R.size();
  UntwistResult res;
  res.perm.resize(H);
  for (size_t i = 0; i < H; ++i) res.perm[i] = class_of_ideal(F, R, ideal_mul(F, R.reps[i], tw.c_ideal));
  Q Nc = ideal_norm(tw.c_ideal), Ncm = 1;
  for (int i = 0; i < m; ++i) Ncm *= Nc;
  std::vector<std::vector<Q>> A(H, std::vector<Q>(H + 1, 0));
  for (size_t i = 0; i < H; ++i) {
    A[i][res.perm[i]] += Ncm;
    A[i][i] -= 1;
    A[i][H] = twisted[i];
  }
  for (size_t col = 0; col < H; ++col) {
    size_t piv = col;
    while (piv < H && A[piv][col] == 0) ++piv;
    if (piv == H) fail("SingularSystem", "untwist system is singular");
    std::swap(A[piv], A[col]);
    for (size_t r = 0; r < H; ++r) {
      if (r == col || A[r][col] == 0) continue;
      Q fct = A[r][col] / A[col][col];
      for (size_t k = col; k <= H; ++k) A[r][k] -= fct * A[col][k];
    }
  }
  res.values.resize(H);
  for (size_t i = 0; i < H; ++i) res.values[i] = A[i][H] / A[i][i];
  for (size_t i = 0; i < H; ++i)
    if (Ncm * res.values[res.perm[i]] - res.values[i] != twisted[i]) fail("SingularSystem", "nonzero residual");
  return res;
}

CycloElem L_value(const Character& chi, const RayClassData& R, const std::vector<Q>& values) {
  CycloElem acc = cyclo_const(chi.M, 0);
  for (size_t i = 0; i < R.size(); ++i) acc += root_of_unity(chi.M, mod_floor(-chi.k[i], chi.M)) * values[i];
  return acc;
}

std::vector<int> reflection_pairing(const ResidueSet& A, const ResidueSet& B) {
  if (A.xs.size() != B.xs.size()) fail("NoBijection", "residue sets have different sizes");
  std::vector<int> match(A.xs.size(), -1);
  std::vector<bool> used(B.xs.size(), false);
  for (size_t i = 0; i < A.xs.size(); ++i) {
    for (size_t j = 0; j < B.xs.size(); ++j) {
      if (used[j]) continue;
      bool ok = true;
      for (size_t k = 0; k < A.xs[i].coords.size() && ok; ++k) ok = B.xs[j].coords[k] == 1 - A.xs[i].coords[k];
      if (ok) {
        match[i] = static_cast<int>(j);
        used[j] = true;
        break;
      }
    }
    if (match[i] < 0) fail("NoBijection", "unmatched residue");
  }
  return match;
}

ZetaSetup zeta_setup(const FieldData& F, const IdealHNF& f, const ConeOptions& opt, const TwistOptions& topt) {
  ZetaSetup S;
  S.F = F;
  S.f = f;
  S.R = ray_class_data(F, f);
  for (const auto& a : S.R.reps) {
    S.decs.push_back(cone_decomposition(F, f, ideal_mul(F, a, f), opt));
    S.residues.push_back(enumerate_residues(S.decs.back(), a));
  }
  S.tw = choose_twist(F, f, S.decs, S.residues, topt);
  return S;
}

std::vector<Q> twisted_values(const ZetaSetup& S, int m) {
  std::vector<Q> out;
  for (size_t i = 0; i < S.R.size(); ++i)
    out.push_back(twisted_partial_zeta(S.F, S.R.reps[i], S.tw, shintani_terms(S.decs[i], S.residues[i]), m));
  return out;
}

std::vector<Q> partial_zeta_values(const ZetaSetup& S, int m) {
  return untwist(S.F, S.R, S.tw, twisted_values(S, m), m).values;
}

}  // namespace iwz
