#include "iwz/iwasawa.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "iwz/kernels.hpp"

namespace iwz {

namespace {

int64_t pN(const SeriesJob& job) { return ipow(job.opt.p, job.opt.N); }

int64_t omega_res(long p, int N, const Z& a) {
  return teichmuller(padic(p, N, z_mod(a, ipow(p, N)))).value;
}

std::pair<int64_t, int64_t> coords_mod(const FieldElem& x, int64_t M) {
  if (!is_integral(x)) fail("DomainError", "expected an integral element");
  return {z_mod(x.a.get_num(), M), z_mod(x.b.get_num(), M)};
}

// residues mod p^N of alpha_weights, cached by exponent vector
struct WeightCache {
  int64_t c = 1;
  int64_t P = 1;
  long p = 2;
  int N = 1;
  std::map<std::vector<int64_t>, int> index;
  std::vector<std::vector<int64_t>> tables;
  std::vector<std::vector<Q>> exact;
  int get(const std::vector<int64_t>& e) {
    auto it = index.find(e);
    if (it != index.end()) return it->second;
    auto W = alpha_weights(c, e, P);
    std::vector<int64_t> r(c);
    for (int64_t s = 0; s < c; ++s) r[s] = reduce_mod_pN(W[s], p, N);
    tables.push_back(std::move(r));
    exact.push_back(std::move(W));
    int id = static_cast<int>(tables.size()) - 1;
    index.emplace(e, id);
    return id;
  }
};

std::vector<int64_t> exps_of(const SeriesJob& job, const std::vector<FieldElem>& basis) {
  std::vector<int64_t> e;
  for (const auto& v : basis) e.push_back(twist_exponent(job.F, job.S.tw, v));
  return e;
}

void require_even(const Character& chi) {
  if (!chi.even) fail("OddCharacter", "the character is not even");
}

IwasawaPoly grid_series(const SeriesJob& job, const std::vector<int64_t>& scale_per_class) {
  const auto& F = job.F;
  long p = job.opt.p;
  int N = job.opt.N;
  GridJob g;
  g.n = F.n;
  g.p = p;
  g.h = job.opt.h;
  g.c = job.S.tw.c;
  g.m0 = F.m0.get_si();
  g.m1 = F.m1.get_si();
  g.N = N;
  g.lu = &job.lu;
  const int64_t M = job.lu.qpl, modN = pN(job);
  WeightCache wc{g.c, ipow(p, g.h), p, N, {}, {}, {}};
  for (size_t i = 0; i < job.S.R.size(); ++i) {
    int64_t sc = mod_floor(scale_per_class[i], modN);
    if (sc == 0) continue;
    int32_t LNa = job.lu(z_mod(job.Na[i], M));
    if (LNa < 0) fail("SupportViolation", "norm of a class representative is not a unit");
    int64_t scale = mulmod(sc, omega_res(p, N, job.Na[i]), modN);
    for (const auto& t : job.terms[i]) {
      GridTerm gt;
      std::tie(gt.xa, gt.xb) = coords_mod(t.x, M);
      for (int k = 0; k < F.n; ++k) std::tie(gt.va[k], gt.vb[k]) = coords_mod(t.basis[k], M);
      auto e = exps_of(job, t.basis);
      for (int k = 0; k < F.n; ++k) gt.e[k] = e[k];
      gt.bx = twist_exponent(F, job.S.tw, t.x);
      gt.weights = wc.get(e);
      gt.scale = scale;
      gt.shift = -LNa;
      g.terms.push_back(gt);
    }
  }
  g.W = wc.tables;
  IwasawaPoly out = make_poly(p, N, job.L);
  out.coeffs = job.opt.workers == 1 ? grid_accumulate_serial(g) : grid_accumulate_parallel(g, job.opt.workers);
  return out;
}

std::vector<int64_t> chi_scales(const SeriesJob& job, const Character& chi) {
  require_even(chi);
  std::vector<int64_t> s(job.S.R.size());
  for (size_t i = 0; i < s.size(); ++i) s[i] = character_residue(chi, static_cast<int>(i), job.opt.p, job.opt.N);
  return s;
}

}  // namespace

SeriesJob prepare_job(const FieldData& F, const IdealHNF& f, const SeriesOptions& opt) {
  SeriesJob job;
  job.F = F;
  job.f = f;
  job.opt = opt;
  long p = opt.p;
  if (!is_prime(p)) fail("DomainError", "p must be prime");
  if (opt.ell < 1 || opt.N < 1 || opt.h < 1) fail("DomainError", "ell, N and h must be positive");
  for (const auto& P : primes_above(F, p))
    if (ideal_add(F, f, P.ideal) != P.ideal)
      fail("H1Violation", "a prime above " + std::to_string(p) + " does not divide the conductor");
  job.f_ell = opt.escalate ? ideal_mul(F, principal(F, fe(Q(ipow(p, opt.ell + 1)))), f) : f;
  job.L = opt.level < 0 ? opt.ell : opt.level;
  job.rho = opt.rho >= 0 ? opt.rho : (opt.escalate ? opt.ell + 2 : -1);
  job.u = opt.u ? opt.u : default_u(p);
  ConeOptions co;
  co.mode = ScaleMode::Generator;
  co.subdivide = true;
  co.rho = job.rho;
  co.p = p;
  TwistOptions to;
  to.exclude = p;
  to.start = opt.twist_prime ? opt.twist_prime : opt.twist_start;
  job.S = zeta_setup(F, job.f_ell, co, to);
  if (opt.twist_prime && job.S.tw.c != opt.twist_prime)
    fail("TwistRejected", "twist prime " + std::to_string(opt.twist_prime) + " is not admissible");
  job.lu = make_lu_table(p, job.L, job.u);
  for (size_t i = 0; i < job.S.R.size(); ++i) {
    job.Na.push_back(ideal_norm(job.S.R.reps[i]).get_num());
    job.terms.push_back(shintani_terms(job.S.decs[i], job.S.residues[i]));
  }
  return job;
}

int64_t character_residue(const Character& chi, int cls, long p, int N) {
  int64_t k = mod_floor(-chi.k[cls], chi.M);
  int64_t mod = ipow(p, N);
  if (chi.M == 1) return 1 % mod;
  if (chi.M == 2) return k == 0 ? 1 % mod : mod - 1;
  if ((p - 1) % chi.M != 0) fail("CharacterOrderUnsupported", "character order does not divide p-1");
  return embed_root(chi.M, k, p, N).value;
}

IwasawaPoly partial_iwasawa(const SeriesJob& job, int cls) {
  std::vector<int64_t> s(job.S.R.size(), 0);
  s.at(cls) = 1;
  return grid_series(job, s);
}

IwasawaPoly chi_iwasawa(const SeriesJob& job, const Character& chi) { return grid_series(job, chi_scales(job, chi)); }

IwasawaPoly y_function(const SeriesJob& job, const Character& chi) {
  auto sc = chi_scales(job, chi);
  long p = job.opt.p;
  int N = job.opt.N, ell = job.opt.ell;
  int64_t modN = pN(job);
  LuTable lu = make_lu_table(p, ell, job.u);
  WeightCache wc{job.S.tw.c, 1, p, N, {}, {}, {}};
  IwasawaPoly out = make_poly(p, N, ell);
  for (size_t i = 0; i < job.S.R.size(); ++i) {
    Q S = 0;
    for (const auto& t : job.terms[i]) {
      int id = wc.get(exps_of(job, t.basis));
      S += wc.exact[id][twist_exponent(job.F, job.S.tw, t.x)];
    }
    int64_t w = mulmod(mulmod(mod_floor(sc[i], modN), omega_res(p, N, job.Na[i]), modN), reduce_mod_pN(S, p, N), modN);
    poly_add_term(out, -static_cast<int64_t>(lu(z_mod(job.Na[i], lu.qpl))), w);
  }
  return out;
}

IwasawaPoly x_function(const SeriesJob& job, const Character& chi, const std::vector<std::vector<long>>& eps) {
  auto sc = chi_scales(job, chi);
  const auto& F = job.F;
  long p = job.opt.p;
  int N = job.opt.N, ell = job.opt.ell, n = F.n;
  int64_t modN = pN(job);
  AngleTable ang = make_angle_table(p, ell);
  const int64_t P = ang.qpl, pl = ipow(p, ell);
  WeightCache wc{job.S.tw.c, P, p, N, {}, {}, {}};
  IwasawaPoly out = make_poly(p, N, ell, P);
  for (size_t i = 0; i < job.S.R.size(); ++i) {
    int64_t scale = mulmod(mod_floor(sc[i], modN), omega_res(p, N, job.Na[i]), modN);
    if (scale == 0) continue;
    int64_t base = mod_floor(-ang(z_mod(job.Na[i], P)) + n * pl, P);
    const FieldElem& unit = job.S.decs[i].unit;
    for (size_t ti = 0; ti < job.terms[i].size(); ++ti) {
      const auto& t = job.terms[i][ti];
      long ej = eps.empty() ? 0 : eps[i][ti];
      FieldElem g = pow(F, unit, ej);
      std::vector<FieldElem> basis;
      std::vector<int64_t> tr;
      for (const auto& v : t.basis) {
        basis.push_back(mul(F, g, v));
        Q T = trace(F, basis.back());
        if (vp(T, p) < ell + 2)
          fail("TraceNormalizationFailed", "v_p(Tr v) = " + std::to_string(vp(T, p)) + " < ell+2");
        tr.push_back(z_mod(T.get_num(), P));
      }
      FieldElem x = mul(F, g, t.x);
      auto e = exps_of(job, basis);
      int64_t bx = twist_exponent(F, job.S.tw, x);
      const auto& W = wc.tables[wc.get(e)];
      // 1/(1 - (1+T)^t z) = sum_{i<P} z^i (1+T)^{i t} / (1 - z^P) modulo (1+T)^P - 1
      int64_t cells = n == 1 ? P : P * P;
      for (int64_t idx = 0; idx < cells; ++idx) {
        int64_t r0 = idx % P, r1 = idx / P;
        int64_t s = bx + r0 * e[0] + (n == 2 ? r1 * e[1] : 0);
        int64_t k = base + r0 * tr[0] + (n == 2 ? r1 * tr[1] : 0);
        poly_add_term(out, k, mulmod(scale, W[mod_floor(s, job.S.tw.c)], modN));
      }
    }
  }
  return out;
}

std::vector<std::vector<long>> distinct_unit_choice(const SeriesJob& job, int tries) {
  std::set<std::vector<int64_t>> used;
  std::vector<std::vector<long>> eps(job.S.R.size());
  for (size_t i = 0; i < job.S.R.size(); ++i) {
    const FieldElem& unit = job.S.decs[i].unit;
    for (const auto& t : job.terms[i]) {
      long pick = 0;
      FieldElem g = fe(1);
      for (long j = 0; j < tries; ++j) {
        std::vector<FieldElem> b;
        for (const auto& v : t.basis) b.push_back(mul(job.F, g, v));
        auto e = exps_of(job, b);
        if (!used.count(e)) {
          pick = j;
          used.insert(e);
          break;
        }
        g = mul(job.F, g, unit);
      }
      eps[i].push_back(pick);
    }
  }
  return eps;
}

FiniteLevelMeasure b_measure(const SeriesJob& job, const ClassMeasureInput& in) {
  const auto& F = job.F;
  long p = job.opt.p;
  int N = job.opt.N, ell = job.opt.ell, n = F.n;
  if (job.rho < ell + 1) fail("DomainError", "B measures need rho >= ell+1");
  int H = job.opt.h_G + job.rho;
  int64_t PH = ipow(p, H), PG = ipow(p, job.opt.h_G), pl = ipow(p, ell), modN = pN(job);
  int64_t a_ell = teichmuller(padic(p, ell + 1, z_mod(in.Na, ipow(p, ell + 1)))).value;
  int64_t t0 = z_mod(-in.Na, PH);
  WeightCache wc{job.S.tw.c, PG, p, N, {}, {}, {}};
  auto mu = make_measure(n + 1, p, H, N, "B");
  std::vector<int64_t> box(n + 1);
  for (const auto& t : in.terms) {
    std::vector<int64_t> tr;
    for (const auto& v : t.basis) tr.push_back(z_mod(trace(F, v).get_num(), PH));
    auto e = exps_of(job, t.basis);
    int64_t bx = twist_exponent(F, job.S.tw, t.x);
    const auto& W = wc.tables[wc.get(e)];
    int64_t cells = n == 1 ? PG : PG * PG;
    for (int64_t idx = 0; idx < cells; ++idx) {
      int64_t r[2] = {idx % PG, idx / PG};
      int64_t s = bx;
      box[0] = t0;
      for (int k = 0; k < n; ++k) {
        s += r[k] * e[k];
        box[k + 1] = mulmod(a_ell, mod_floor(pl + mulmod(r[k], tr[k], PH), PH), PH);
      }
      add_mass(mu, box, Q(mulmod(mod_floor(in.weight, modN), W[mod_floor(s, job.S.tw.c)], modN)));
    }
  }
  return mu;
}

FiniteLevelMeasure class_b_measure(const SeriesJob& job, int cls, bool with_omega) {
  ClassMeasureInput in;
  in.Na = job.Na.at(cls);
  in.terms = job.terms[cls];
  in.weight = with_omega ? omega_res(job.opt.p, job.opt.N, in.Na) : 1;
  return b_measure(job, in);
}

FiniteLevelMeasure g_measure(const SeriesJob& job, const Character& chi) {
  auto sc = chi_scales(job, chi);
  long p = job.opt.p;
  int N = job.opt.N;
  int64_t modN = pN(job);
  FiniteLevelMeasure acc;
  bool first = true;
  for (size_t i = 0; i < job.S.R.size(); ++i) {
    ClassMeasureInput in;
    in.Na = job.Na[i];
    in.terms = job.terms[i];
    in.weight = mulmod(mod_floor(sc[i], modN), omega_res(p, N, in.Na), modN);
    auto B = b_measure(job, in);
    acc = first ? B : acc + B;
    first = false;
  }
  acc.provenance = "B*";
  if (auto bad = support_violation(acc, g_support(job))) fail("SupportViolation", *bad);
  return acc;
}

SupportSpec g_support(const SeriesJob& job) {
  SupportSpec s;
  s.rho.assign(job.F.n + 1, job.opt.ell);
  s.rho[0] = 0;
  s.tau = 0;
  return s;
}

GammaPairCheck gamma_pair_check(const SeriesJob& job, int cls, long r) {
  const auto& F = job.F;
  long p = job.opt.p;
  int N = job.opt.N, ell = job.opt.ell;
  GammaPairCheck out;
  out.cls = cls;
  out.r = r;
  Z pr;
  mpz_ui_pow_ui(pr.get_mpz_t(), p, r);
  out.gamma = ideal_min_integer(job.f_ell) * pr - 1;
  if (z_mod(out.gamma, job.S.tw.c) == 0) fail("DomainError", "gamma lies in c");
  FieldElem g = fe(Q(out.gamma));
  auto dec_g = scale_cones(job.S.decs[cls], g, true);
  IdealHNF ga = ideal_mul(F, principal(F, g), job.S.R.reps[cls]);
  auto res_g = enumerate_residues(dec_g, ga);
  out.pairing_ok = true;
  try {
    for (size_t j = 0; j < res_g.size(); ++j) reflection_pairing(job.S.residues[cls][j], res_g[j]);
  } catch (const Error&) {
    out.pairing_ok = false;
  }
  ClassMeasureInput A, B;
  A.Na = job.Na[cls];
  A.terms = job.terms[cls];
  A.weight = omega_res(p, N, A.Na);
  B.Na = A.Na;
  for (int k = 0; k < F.n; ++k) B.Na *= out.gamma;
  B.terms = shintani_terms(dec_g, res_g);
  B.weight = omega_res(p, N, B.Na);
  auto mA = b_measure(job, A), mB = b_measure(job, B);
  GammaOptions raw;
  raw.u = job.u;
  raw.ell = ell;
  raw.N = N;
  raw.mode = ExponentMode::Raw;
  auto GA = gamma_poly(mA, raw);
  out.literal_ok = gamma_poly(mA + mB, raw) == poly_scale(GA, 2);
  out.lhs = gamma_poly(tilde(mA + mB), raw);
  out.rhs = poly_scale(gamma_poly(tilde(mA), raw), 2);
  out.reflected_ok = out.lhs == out.rhs;
  return out;
}

NormReport verify_norm_theorem(const SeriesJob& job, const Character& chi) {
  NormReport rep;
  rep.Z = chi_iwasawa(job, chi);
  rep.mu_Z = mu_invariant(rep.Z);
  rep.mu = rep.mu_Z;
  rep.witness = mu_witness(rep.Z);
  rep.mu_Y = mu_invariant(y_function(job, chi));
  rep.mu_X = mu_invariant(x_function(job, chi));
  GammaOptions go;
  go.u = job.u;
  go.ell = job.opt.ell;
  go.N = job.opt.N;
  go.mode = ExponentMode::Lu;
  rep.mu_G = mu_invariant(gamma_poly(g_measure(job, chi), go));
  rep.pass = rep.mu == 0;
  return rep;
}

std::vector<InterpolationCheck> interpolation_checks(const SeriesJob& job, const std::vector<int>& ms) {
  long p = job.opt.p;
  int N = job.opt.N;
  std::vector<InterpolationCheck> out;
  for (size_t i = 0; i < job.S.R.size(); ++i) {
    auto poly = partial_iwasawa(job, static_cast<int>(i));
    for (int m : ms) {
      if (m < 1 || m % (p == 2 ? 2 : p - 1) != 0) fail("DomainError", "m must be a positive multiple of phi(q)");
      InterpolationCheck c;
      c.cls = static_cast<int>(i);
      c.m = m;
      c.lhs = evaluate_at(poly, 1 - m, job.u);
      Q z = twisted_partial_zeta(job.F, job.S.R.reps[i], job.S.tw, job.terms[i], m);
      c.rhs = reduce_mod_pN(z, p, N);
      c.cap = std::min(N, job.L + 1);
      int v = vp(Z(c.lhs - c.rhs), p);
      c.exponent = std::min(v, c.cap);
      out.push_back(c);
    }
  }
  return out;
}

DirichletChar dirichlet_from_ray(const RayClassData& R, const Character& chi) {
  if (R.n != 1) fail("DomainError", "Dirichlet characters live over Q");
  DirichletChar d;
  d.f = ideal_min_integer(R.modulus).get_si();
  d.order = chi.M;
  d.k.assign(d.f, -1);
  FieldData Fq = make_field(1);
  for (int64_t b = 1; b < d.f; ++b)
    if (std::gcd(b, d.f) == 1) d.k[b] = chi.k[class_of_element(Fq, R, fe(b))];
  return d;
}

DirichletChar quadratic_character(int64_t f) {
  if (!is_prime(f) || f == 2) fail("DomainError", "quadratic character needs an odd prime");
  DirichletChar d;
  d.f = f;
  d.order = 2;
  d.k.assign(f, -1);
  for (int64_t b = 1; b < f; ++b) d.k[b] = powmod(b, (f - 1) / 2, f) == 1 ? 0 : 1;
  return d;
}

IwasawaPoly kubota_leopoldt(const DirichletChar& chi, long p, int64_t u, int h, int ell, int N, int64_t c) {
  const int64_t q = q_of(p), mod = ipow(p, N);
  const int64_t M = chi.f * q * ipow(p, h);
  if (M % (q * ipow(p, ell)) != 0) fail("DomainError", "level too small");
  if (std::gcd(c, M) != 1) fail("DomainError", "regularizing integer not coprime to the modulus");
  LuTable lu = make_lu_table(p, ell, u);
  int64_t cinv = invmod(mod_floor(c, M), M);
  Q half_c = Q(c - 1, 2);
  half_c.canonicalize();
  IwasawaPoly out = make_poly(p, N, ell);
  for (int64_t b = 1; b < M; ++b) {
    if (b % p == 0) continue;
    int64_t kb = chi.k[b % chi.f];
    if (kb < 0) continue;
    int64_t chib;
    if (chi.order == 1)
      chib = 1;
    else if (chi.order == 2)
      chib = kb == 0 ? 1 : mod - 1;
    else
      chib = embed_root(chi.order, kb, p, N).value;
    int64_t winv = invmod(teichmuller(padic(p, N, b % mod)).value, mod);
    // B(b/M) - c B(c^{-1} b / M), B(y) = {y} - 1/2
    int64_t bc = mulmod(cinv, b, M);
    Q muc = Q(Z(b) - Z(c) * Z(bc), Z(M));
    muc.canonicalize();
    muc += half_c;
    int64_t w = mulmod(mulmod(chib, winv, mod), reduce_mod_pN(muc, p, N), mod);
    poly_add_term(out, lu(b), w);
  }
  return out;
}

}  // namespace iwz
