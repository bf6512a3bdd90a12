#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "iwz/cyclotomic.hpp"
#include "iwz/numberfield.hpp"

namespace iwz {

// Simplicial cone with per-coordinate boundary flags.
// zero_ok[k]: residue coordinate k ranges over [0,1); otherwise (0,1].
struct Cone {
  std::vector<FieldElem> basis;
  std::vector<bool> zero_ok;
};

struct ConeDecomposition {
  FieldData F;
  IdealHNF modulus;
  IdealHNF scale_into;
  std::vector<Cone> cones;
  FieldElem unit;      // generator of E_+(f)
  long unit_exp = 1;   // unit = eps_+^unit_exp
};

enum class ScaleMode { Rational, Generator };

struct ConeOptions {
  ScaleMode mode = ScaleMode::Rational;
  bool subdivide = false;  // split into eps_+^i {1, eps_+}, i < unit_exp
  int rho = -1;            // if >= 0, scale by p-powers until v_p(Tr v) >= rho
  long p = 0;
  bool exact_trace = false;  // require v_p(Tr v) == rho
  bool flip_flags = false;
};

ConeDecomposition cone_decomposition(const FieldData& F, const IdealHNF& f, const IdealHNF& scale_into,
                                     const ConeOptions& opt = {});
ConeDecomposition scale_cones(const ConeDecomposition& dec, const FieldElem& g, bool flip_flags);

std::vector<Q> cone_coords(const FieldData& F, const Cone& C, const FieldElem& y);
bool in_cone(const FieldData& F, const Cone& C, const FieldElem& y);
// number of (cone, exponent) pairs whose translate contains w, |e| <= bound
int cover_count(const ConeDecomposition& dec, const FieldElem& w, int bound);
bool cover_test(const ConeDecomposition& dec, int random_points, uint64_t seed);

struct Residue {
  std::vector<Q> coords;
  FieldElem x;
};

struct ResidueSet {
  int cone = 0;
  IdealHNF a;
  std::vector<Residue> xs;
};

std::vector<ResidueSet> enumerate_residues(const ConeDecomposition& dec, const IdealHNF& a);
// element y0 of a with y0 = 1 mod f
FieldElem one_mod(const FieldData& F, const IdealHNF& a, const IdealHNF& f);

struct TwistData {
  IdealHNF c_ideal;
  long c = 1;
  FieldElem nu;
  Q trace_nu;
};

// c * Tr(nu y) mod c; y must satisfy Tr(nu y) in (1/c)Z
int64_t twist_exponent(const FieldData& F, const TwistData& tw, const FieldElem& y);

struct TwistOptions {
  long exclude = 0;
  long bound = 10000;
  long start = 2;
};

TwistData twist_from_prime(const FieldData& F, const PrimeIdeal& P);
std::optional<std::string> twist_violation(const FieldData& F, const IdealHNF& f, const TwistData& tw,
                                           const std::vector<ConeDecomposition>& decs,
                                           const std::vector<std::vector<ResidueSet>>& residues);
TwistData choose_twist(const FieldData& F, const IdealHNF& f, const std::vector<ConeDecomposition>& decs,
                       const std::vector<std::vector<ResidueSet>>& residues, const TwistOptions& opt = {});

// One summand of a Shintani sum: cone basis and a residue in it.
struct ShintaniTerm {
  std::vector<FieldElem> basis;
  std::vector<Q> coords;
  FieldElem x;
};
std::vector<ShintaniTerm> shintani_terms(const ConeDecomposition& dec, const std::vector<ResidueSet>& residues);

Q twisted_partial_zeta(const FieldData& F, const IdealHNF& a, const TwistData& tw,
                       const std::vector<ShintaniTerm>& terms, int m);

struct UntwistResult {
  std::vector<Q> values;
  std::vector<int> perm;  // class(a) -> class(a c)
};
UntwistResult untwist(const FieldData& F, const RayClassData& R, const TwistData& tw, const std::vector<Q>& twisted,
                      int m);

CycloElem L_value(const Character& chi, const RayClassData& R, const std::vector<Q>& values);

// matching i -> j with y_j = 1 - x_i coordinatewise
std::vector<int> reflection_pairing(const ResidueSet& A, const ResidueSet& B);

// Everything needed for zeta values over all classes of one modulus.
struct ZetaSetup {
  FieldData F;
  IdealHNF f;
  RayClassData R;
  std::vector<ConeDecomposition> decs;
  std::vector<std::vector<ResidueSet>> residues;
  TwistData tw;
};
ZetaSetup zeta_setup(const FieldData& F, const IdealHNF& f, const ConeOptions& opt = {},
                     const TwistOptions& topt = {});
std::vector<Q> twisted_values(const ZetaSetup& S, int m);
std::vector<Q> partial_zeta_values(const ZetaSetup& S, int m);

}  // namespace iwz
