#include "iwz/measures.hpp"

#include "iwz/padic.hpp"

namespace iwz {

namespace {

void check_shape(const FiniteLevelMeasure& a, const FiniteLevelMeasure& b) {
  if (a.d != b.d || a.p != b.p || a.h != b.h || a.prec != b.prec) fail("DomainError", "measure shapes differ");
}

Q normalize_mass(const FiniteLevelMeasure& mu, const Q& m) {
  if (mu.prec == 0) return m;
  return Q(reduce_mod_pN(m, mu.p, mu.prec));
}

void add_at(FiniteLevelMeasure& mu, int64_t idx, const Q& m) {
  if (m == 0) return;
  auto it = mu.masses.find(idx);
  if (it == mu.masses.end()) {
    Q v = normalize_mass(mu, m);
    if (v != 0) mu.masses.emplace(idx, v);
    return;
  }
  it->second = normalize_mass(mu, it->second + m);
  if (it->second == 0) mu.masses.erase(it);
}

}  // namespace

FiniteLevelMeasure make_measure(int d, long p, int h, int prec, std::string provenance) {
  if (d < 1 || h < 0) fail("DomainError", "bad measure shape");
  // flattened indices must fit in int64
  long double cap = 1;
  for (int i = 0; i < d * h; ++i) cap *= p;
  if (cap > 4.0e18L) fail("DomainError", "measure level too large");
  FiniteLevelMeasure mu;
  mu.d = d;
  mu.p = p;
  mu.h = h;
  mu.prec = prec;
  mu.provenance = std::move(provenance);
  return mu;
}

int64_t box_index(const FiniteLevelMeasure& mu, const std::vector<int64_t>& r) {
  if (static_cast<int>(r.size()) != mu.d) fail("DomainError", "box dimension mismatch");
  int64_t P = mu.side(), idx = 0, w = 1;
  for (int i = 0; i < mu.d; ++i) {
    idx += mod_floor(r[i], P) * w;
    w *= P;
  }
  return idx;
}

std::vector<int64_t> box_coords(const FiniteLevelMeasure& mu, int64_t idx) {
  int64_t P = mu.side();
  std::vector<int64_t> r(mu.d);
  for (int i = 0; i < mu.d; ++i) {
    r[i] = idx % P;
    idx /= P;
  }
  return r;
}

void add_mass(FiniteLevelMeasure& mu, const std::vector<int64_t>& r, const Q& m) { add_at(mu, box_index(mu, r), m); }

Q mass_at(const FiniteLevelMeasure& mu, const std::vector<int64_t>& r) {
  auto it = mu.masses.find(box_index(mu, r));
  return it == mu.masses.end() ? Q(0) : it->second;
}

Q total_mass(const FiniteLevelMeasure& mu) {
  Q s = 0;
  for (const auto& [k, m] : mu.masses) s += m;
  return normalize_mass(mu, s);
}

FiniteLevelMeasure dirac(int d, long p, int h, const std::vector<int64_t>& r, const Q& m) {
  auto mu = make_measure(d, p, h, 0, "dirac");
  add_mass(mu, r, m);
  return mu;
}

FiniteLevelMeasure operator+(const FiniteLevelMeasure& a, const FiniteLevelMeasure& b) {
  check_shape(a, b);
  FiniteLevelMeasure r = a;
  for (const auto& [k, m] : b.masses) add_at(r, k, m);
  r.provenance = a.provenance + "+" + b.provenance;
  return r;
}

FiniteLevelMeasure scale_measure(const FiniteLevelMeasure& a, const Q& s) {
  FiniteLevelMeasure r = make_measure(a.d, a.p, a.h, a.prec, a.provenance);
  for (const auto& [k, m] : a.masses) add_at(r, k, m * s);
  return r;
}

bool same_masses(const FiniteLevelMeasure& a, const FiniteLevelMeasure& b) {
  return a.d == b.d && a.p == b.p && a.h == b.h && a.masses == b.masses;
}

FiniteLevelMeasure reduce_masses(const FiniteLevelMeasure& a, int N) {
  FiniteLevelMeasure r = make_measure(a.d, a.p, a.h, N, a.provenance);
  for (const auto& [k, m] : a.masses) add_at(r, k, m);
  return r;
}

FiniteLevelMeasure product_measure(const FiniteLevelMeasure& a, const FiniteLevelMeasure& b) {
  if (a.p != b.p || a.h != b.h) fail("DomainError", "product of measures at different levels");
  FiniteLevelMeasure r = make_measure(a.d + b.d, a.p, a.h, a.prec, a.provenance + "x" + b.provenance);
  for (const auto& [ka, ma] : a.masses)
    for (const auto& [kb, mb] : b.masses) {
      auto ra = box_coords(a, ka), rb = box_coords(b, kb);
      ra.insert(ra.end(), rb.begin(), rb.end());
      add_mass(r, ra, ma * mb);
    }
  return r;
}

FiniteLevelMeasure coarsen(const FiniteLevelMeasure& mu, int h2) {
  if (h2 > mu.h || h2 < 0) fail("DomainError", "coarsen needs a lower level");
  FiniteLevelMeasure r = make_measure(mu.d, mu.p, h2, mu.prec, mu.provenance);
  int64_t P2 = r.side();
  for (const auto& [k, m] : mu.masses) {
    auto c = box_coords(mu, k);
    for (auto& x : c) x %= P2;
    add_mass(r, c, m);
  }
  return r;
}

FiniteLevelMeasure restrict_units(const FiniteLevelMeasure& mu) {
  if (mu.h < 1) fail("DomainError", "restriction needs level >= 1");
  FiniteLevelMeasure r = make_measure(mu.d, mu.p, mu.h, mu.prec, mu.provenance);
  for (const auto& [k, m] : mu.masses) {
    auto c = box_coords(mu, k);
    bool unit = true;
    for (auto x : c)
      if (x % mu.p == 0) unit = false;
    if (unit) r.masses.emplace(k, m);
  }
  return r;
}

FiniteLevelMeasure twist(const FiniteLevelMeasure& mu, const std::vector<int64_t>& a) {
  if (static_cast<int>(a.size()) != mu.d) fail("DomainError", "twist dimension mismatch");
  for (auto x : a)
    if (mod_floor(x, mu.p) == 0) fail("NonUnitTwist", "twisting factor is not a unit");
  int64_t P = mu.side();
  // mass_new(r) = mass_old(a r): the old box s moves to a^{-1} s
  std::vector<int64_t> ainv(mu.d);
  for (int i = 0; i < mu.d; ++i) ainv[i] = mu.h == 0 ? 0 : invmod(mod_floor(a[i], P), P);
  FiniteLevelMeasure r = make_measure(mu.d, mu.p, mu.h, mu.prec, mu.provenance);
  for (const auto& [k, m] : mu.masses) {
    auto c = box_coords(mu, k);
    for (int i = 0; i < mu.d; ++i) c[i] = mulmod(c[i], ainv[i], P);
    add_mass(r, c, m);
  }
  return r;
}

FiniteLevelMeasure pushforward_sum(const FiniteLevelMeasure& mu) {
  FiniteLevelMeasure r = make_measure(1, mu.p, mu.h, mu.prec, mu.provenance + "/sum");
  int64_t P = mu.side();
  for (const auto& [k, m] : mu.masses) {
    auto c = box_coords(mu, k);
    int64_t s = 0;
    for (auto x : c) s = (s + x) % P;
    add_mass(r, {s}, m);
  }
  return r;
}

FiniteLevelMeasure reflect(const FiniteLevelMeasure& mu, const ReflectionIndex& I) {
  if (I.d != mu.d) fail("DomainError", "reflection dimension mismatch");
  FiniteLevelMeasure r = make_measure(mu.d, mu.p, mu.h, mu.prec, mu.provenance);
  for (const auto& [k, m] : mu.masses) {
    auto c = box_coords(mu, k);
    for (int i = 0; i < mu.d; ++i)
      if (I.sign(i) < 0) c[i] = -c[i];
    add_mass(r, c, m);
  }
  return r;
}

FiniteLevelMeasure tilde(const FiniteLevelMeasure& mu) {
  FiniteLevelMeasure r = make_measure(mu.d, mu.p, mu.h, mu.prec, mu.provenance + "~");
  for (unsigned mask = 0; mask < (1u << mu.d); ++mask) {
    auto t = reflect(mu, {mu.d, mask});
    for (const auto& [k, m] : t.masses) add_at(r, k, m);
  }
  return r;
}

IwasawaPoly gamma_poly(const FiniteLevelMeasure& mu, const GammaOptions& opt) {
  long p = mu.p;
  int64_t u = opt.u ? opt.u : default_u(p);
  int64_t P = mu.side();
  int64_t period = opt.mode == ExponentMode::Angle ? q_of(p) * ipow(p, opt.ell) : ipow(p, opt.ell);
  IwasawaPoly out = make_poly(p, opt.N, opt.ell, period);
  if (mu.prec != 0 && mu.prec < opt.N) fail("DomainError", "measure precision below N");
  LuTable lu;
  AngleTable ang;
  if (opt.mode == ExponentMode::Raw) {
    if (mu.h < opt.ell) fail("DomainError", "measure level too small for the raw exponent");
  } else {
    if (mu.h - opt.tau < opt.ell + vq(p)) fail("DomainError", "measure level too small for the exponent");
    if (opt.mode == ExponentMode::Lu)
      lu = make_lu_table(p, opt.ell, u);
    else
      ang = make_angle_table(p, opt.ell);
  }
  int64_t ptau = ipow(p, opt.tau);
  for (const auto& [k, m] : mu.masses) {
    auto c = box_coords(mu, k);
    int64_t s = 0;
    for (auto x : c) s = (s + x) % P;
    int64_t e = 0;
    if (opt.mode == ExponentMode::Raw) {
      e = s;
    } else {
      if (s % ptau != 0 || (s / ptau) % p == 0)
        fail("SupportViolation", "box sum " + std::to_string(s) + " has valuation != " + std::to_string(opt.tau));
      int64_t s1 = s / ptau;
      e = opt.mode == ExponentMode::Lu ? lu(s1) : ang(s1);
    }
    poly_add_term(out, e, reduce_mod_pN(m, p, opt.N));
  }
  return out;
}

std::optional<std::string> support_violation(const FiniteLevelMeasure& mu, const SupportSpec& s) {
  if (static_cast<int>(s.rho.size()) != mu.d) fail("DomainError", "support spec dimension mismatch");
  int64_t P = mu.side();
  auto val = [&](int64_t x) {
    if (x == 0) return kInfVal;
    int v = 0;
    while (x % mu.p == 0) {
      x /= mu.p;
      ++v;
    }
    return v;
  };
  for (const auto& [k, m] : mu.masses) {
    auto c = box_coords(mu, k);
    int64_t sum = 0;
    for (int i = 0; i < mu.d; ++i) {
      int v = val(c[i]);
      // a box only pins valuations below h
      if (std::min(v, mu.h) != std::min(s.rho[i], mu.h))
        return "coordinate " + std::to_string(i) + " of box " + std::to_string(k) + " has valuation " +
               (v == kInfVal ? std::string("inf") : std::to_string(v));
      sum = (sum + c[i]) % P;
    }
    int v = val(sum);
    if (std::min(v, mu.h) != std::min(s.tau, mu.h))
      return "coordinate sum of box " + std::to_string(k) + " has wrong valuation";
  }
  return std::nullopt;
}

MeasureNorm measure_norm(const FiniteLevelMeasure& mu) {
  MeasureNorm r;
  r.h = mu.h;
  for (const auto& [k, m] : mu.masses) r.valuation = std::min(r.valuation, vp(m, mu.p));
  if (mu.prec != 0 && r.valuation != kInfVal) r.valuation = std::min(r.valuation, mu.prec);
  return r;
}

std::vector<Q> alpha_weights(int64_t c, const std::vector<int64_t>& e, int64_t P) {
  if (!is_prime(c)) fail("DomainError", "twist modulus must be prime");
  CycloElem D = cyclo_const(c, 1);
  for (auto ek : e) {
    int64_t t = mod_floor(mulmod(mod_floor(ek, c), mod_floor(P, c), c), c);
    if (t == 0) fail("DomainError", "cone generator exponent divisible by c");
    D = D * invert(cyclo_const(c, 1) - root_of_unity(c, t));
  }
  // W[s] = Tr(zeta^s D); Tr(zeta^j) is c-1 or -1
  std::vector<Q> W(c, 0);
  Q S = 0;
  for (const auto& x : D.c) S += x;
  for (int64_t s = 0; s < c; ++s) {
    Q w = -S;
    for (size_t i = 0; i < D.c.size(); ++i)
      if ((static_cast<int64_t>(i) + s) % c == 0) w += Q(c) * D.c[i];
    W[s] = w;
  }
  return W;
}

FiniteLevelMeasure alpha_jx(int64_t c, const std::vector<int64_t>& e, int64_t bx, long p, int h) {
  int n = static_cast<int>(e.size());
  int64_t P = ipow(p, h);
  auto W = alpha_weights(c, e, P);
  auto mu = make_measure(n, p, h, 0, "alpha");
  std::vector<int64_t> r(n, 0);
  int64_t total = 1;
  for (int i = 0; i < n; ++i) total *= P;
  for (int64_t idx = 0; idx < total; ++idx) {
    int64_t t = idx, s = bx;
    for (int i = 0; i < n; ++i) {
      r[i] = t % P;
      t /= P;
      s += mulmod(mod_floor(e[i], c), r[i] % c, c);
    }
    add_mass(mu, r, W[mod_floor(s, c)]);
  }
  return mu;
}

Q alpha_total(int64_t c, const std::vector<int64_t>& e, int64_t bx) { return alpha_weights(c, e, 1)[mod_floor(bx, c)]; }

std::vector<Q> mahler_coefficients(const std::vector<Q>& f, int degree) {
  auto evalf = [&](long k) {
    Q v = 0;
    for (size_t i = f.size(); i-- > 0;) v = v * k + f[i];
    return v;
  };
  std::vector<Q> lam(degree + 1, 0);
  for (int n = 0; n <= degree; ++n)
    for (int k = 0; k <= n; ++k) {
      Q t = Q(binom(n, k)) * evalf(k);
      lam[n] += ((n - k) % 2 ? -t : t);
    }
  return lam;
}

CycloElem rational_function_value(const std::vector<Q>& lambda, const CycloElem& z) {
  CycloElem one = cyclo_const(z.M, 1);
  CycloElem inv1 = invert(one - z);
  CycloElem zk = one, denk = inv1, acc = cyclo_const(z.M, 0);
  for (const auto& l : lambda) {
    acc += zk * denk * l;
    zk = zk * z;
    denk = denk * inv1;
  }
  return acc;
}

CycloElem limit_form_value(const std::vector<Q>& f, const CycloElem& z, long p, int h) {
  int64_t P = ipow(p, h);
  CycloElem one = cyclo_const(z.M, 1);
  CycloElem zn = one, acc = cyclo_const(z.M, 0);
  for (int64_t n = 0; n < P; ++n) {
    Q v = 0;
    for (size_t i = f.size(); i-- > 0;) v = v * n + f[i];
    acc += zn * v;
    zn = zn * z;
  }
  return acc * invert(one - zn);
}

}  // namespace iwz
