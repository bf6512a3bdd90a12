#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "iwz/cyclotomic.hpp"
#include "iwz/poly.hpp"
#include "iwz/rational.hpp"

namespace iwz {

// Measure on Z_p^d known on the boxes of level h (side p^h).
// Boxes are stored sparsely under the flattened index sum_i r_i p^{h i};
// boxes that are absent carry mass zero.
struct FiniteLevelMeasure {
  int d = 1;
  long p = 2;
  int h = 0;
  int prec = 0;  // 0: exact rational masses, else residues mod p^prec
  std::map<int64_t, Q> masses;
  std::string provenance;
  int64_t side() const { return ipow(p, h); }
};

FiniteLevelMeasure make_measure(int d, long p, int h, int prec = 0, std::string provenance = "");
int64_t box_index(const FiniteLevelMeasure& mu, const std::vector<int64_t>& r);  // r reduced mod p^h
std::vector<int64_t> box_coords(const FiniteLevelMeasure& mu, int64_t idx);
void add_mass(FiniteLevelMeasure& mu, const std::vector<int64_t>& r, const Q& m);
Q mass_at(const FiniteLevelMeasure& mu, const std::vector<int64_t>& r);
Q total_mass(const FiniteLevelMeasure& mu);
FiniteLevelMeasure dirac(int d, long p, int h, const std::vector<int64_t>& r, const Q& m = 1);

FiniteLevelMeasure operator+(const FiniteLevelMeasure& a, const FiniteLevelMeasure& b);
FiniteLevelMeasure scale_measure(const FiniteLevelMeasure& a, const Q& s);
bool same_masses(const FiniteLevelMeasure& a, const FiniteLevelMeasure& b);
// masses reduced mod p^N
FiniteLevelMeasure reduce_masses(const FiniteLevelMeasure& a, int N);
FiniteLevelMeasure product_measure(const FiniteLevelMeasure& a, const FiniteLevelMeasure& b);

FiniteLevelMeasure coarsen(const FiniteLevelMeasure& mu, int h2);
FiniteLevelMeasure restrict_units(const FiniteLevelMeasure& mu);
FiniteLevelMeasure twist(const FiniteLevelMeasure& mu, const std::vector<int64_t>& a);
FiniteLevelMeasure pushforward_sum(const FiniteLevelMeasure& mu);

struct ReflectionIndex {
  int d = 1;
  unsigned mask = 0;  // bit i set: coordinate i is negated
  int sign(int i) const { return (mask >> i) & 1u ? -1 : 1; }
};
FiniteLevelMeasure reflect(const FiniteLevelMeasure& mu, const ReflectionIndex& I);
FiniteLevelMeasure tilde(const FiniteLevelMeasure& mu);

enum class ExponentMode { Lu, Angle, Raw };

struct GammaOptions {
  int64_t u = 0;  // 0: default generator
  int ell = 1;
  int N = 4;
  ExponentMode mode = ExponentMode::Lu;
  int tau = 0;  // required valuation of the coordinate sum (Lu and Angle modes)
};
// sum over boxes of mass * (1+T)^{exponent(box sum)}; period p^ell, or q p^ell in Angle mode
IwasawaPoly gamma_poly(const FiniteLevelMeasure& mu, const GammaOptions& opt);

// supports: coordinate i in p^{rho_i} Z_p^*, coordinate sum in p^tau Z_p^*
struct SupportSpec {
  std::vector<int> rho;
  int tau = 0;
};
std::optional<std::string> support_violation(const FiniteLevelMeasure& mu, const SupportSpec& s);

struct MeasureNorm {
  int valuation = kInfVal;
  int h = 0;
};
MeasureNorm measure_norm(const FiniteLevelMeasure& mu);

// W[s] = sum_delta zeta_c^{delta s} prod_k 1/(1 - zeta_c^{delta e_k P}), s in [0,c), c prime
std::vector<Q> alpha_weights(int64_t c, const std::vector<int64_t>& e, int64_t P);
// box r gets W[bx + sum e_k r_k] with P = p^h
FiniteLevelMeasure alpha_jx(int64_t c, const std::vector<int64_t>& e, int64_t bx, long p, int h);
// sum_delta zeta^{delta bx} prod_k 1/(1 - zeta^{delta e_k}), the total mass of alpha_jx
Q alpha_total(int64_t c, const std::vector<int64_t>& e, int64_t bx);

// polynomial f given by coefficients (low degree first)
std::vector<Q> mahler_coefficients(const std::vector<Q>& f, int degree);
CycloElem rational_function_value(const std::vector<Q>& lambda, const CycloElem& z);
// (sum_{n < p^h} f(n) z^n) / (1 - z^{p^h})
CycloElem limit_form_value(const std::vector<Q>& f, const CycloElem& z, long p, int h);

}  // namespace iwz
