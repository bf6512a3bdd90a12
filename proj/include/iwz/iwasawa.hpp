#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "iwz/measures.hpp"
#include "iwz/numberfield.hpp"
#include "iwz/padic.hpp"
#include "iwz/poly.hpp"
#include "iwz/shintani.hpp"

namespace iwz {

struct SeriesOptions {
  long p = 5;
  int ell = 1;
  int N = 4;
  int h = 3;
  int level = -1;         // exponent level of Z; -1 means ell
  bool escalate = true;   // work modulo f_ell = p^{ell+1} f
  int rho = -1;           // lower bound for v_p(Tr v); -1 means ell+2 when escalating
  int h_G = 1;            // grid level of the B measures
  long twist_prime = 0;   // rational prime below c; 0 picks the first admissible one
  long twist_start = 2;
  int64_t u = 0;          // 0: default generator
  int workers = 0;        // 0: OpenMP default, 1: serial kernel
};

struct SeriesJob {
  FieldData F;
  IdealHNF f;
  IdealHNF f_ell;
  SeriesOptions opt;
  int64_t u = 0;
  int L = 1;
  int rho = 0;
  ZetaSetup S;
  std::vector<Z> Na;                             // norms of the class representatives
  std::vector<std::vector<ShintaniTerm>> terms;  // per class
  LuTable lu;                                    // level L
};

SeriesJob prepare_job(const FieldData& F, const IdealHNF& f, const SeriesOptions& opt);

// chi(a^{-1}) as a residue mod p^N
int64_t character_residue(const Character& chi, int cls_inverse_of, long p, int N);

IwasawaPoly partial_iwasawa(const SeriesJob& job, int cls);
IwasawaPoly chi_iwasawa(const SeriesJob& job, const Character& chi);
IwasawaPoly y_function(const SeriesJob& job, const Character& chi);
// eps[cls][term]: exponent of the E_+(f_ell) generator applied to that term; empty means all 0
IwasawaPoly x_function(const SeriesJob& job, const Character& chi,
                       const std::vector<std::vector<long>>& eps = {});
// exponents making the conjugated z-vectors pairwise distinct where possible
std::vector<std::vector<long>> distinct_unit_choice(const SeriesJob& job, int tries = 8);

// measure of one class built from explicit cones and residues
struct ClassMeasureInput {
  Z Na;
  std::vector<ShintaniTerm> terms;
  int64_t weight = 1;  // mod p^N
};
FiniteLevelMeasure b_measure(const SeriesJob& job, const ClassMeasureInput& in);
FiniteLevelMeasure class_b_measure(const SeriesJob& job, int cls, bool with_omega = true);
FiniteLevelMeasure g_measure(const SeriesJob& job, const Character& chi);
SupportSpec g_support(const SeriesJob& job);

// Pairing of class a with gamma a, gamma = (f_ell cap Z) p^r - 1.
struct GammaPairCheck {
  int cls = 0;
  long r = 0;
  Z gamma;
  bool pairing_ok = false;  // residues of gamma a are 1 - x coordinatewise
  bool literal_ok = false;  // G^(gamma) == 2 G (meaningful for even n)
  bool reflected_ok = false;
  IwasawaPoly lhs, rhs;     // reflection-summed forms
};
GammaPairCheck gamma_pair_check(const SeriesJob& job, int cls, long r);

struct NormReport {
  int mu = kInfVal;
  int64_t witness = -1;
  int mu_Z = kInfVal, mu_Y = kInfVal, mu_X = kInfVal, mu_G = kInfVal;
  IwasawaPoly Z;
  bool pass = false;
};
NormReport verify_norm_theorem(const SeriesJob& job, const Character& chi);

struct InterpolationCheck {
  int cls = 0;
  int m = 0;
  int64_t lhs = 0, rhs = 0;
  int exponent = 0;  // v_p(lhs - rhs), capped at the meaningful precision
  int cap = 0;
};
std::vector<InterpolationCheck> interpolation_checks(const SeriesJob& job, const std::vector<int>& ms);

// Dirichlet character over Q: chi(b) = e(k[b mod f] / order), k = -1 where gcd(b, f) > 1
struct DirichletChar {
  int64_t f = 1;
  int64_t order = 1;
  std::vector<int64_t> k;
};
DirichletChar dirichlet_from_ray(const RayClassData& R, const Character& chi);
DirichletChar quadratic_character(int64_t f);  // Legendre symbol mod an odd prime f
// c-regularized Bernoulli sum at modulus f q p^h, bucketed by L_u at level ell
IwasawaPoly kubota_leopoldt(const DirichletChar& chi, long p, int64_t u, int h, int ell, int N, int64_t c);

}  // namespace iwz
