#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "iwz/rational.hpp"

namespace iwz {

// a + b*omega
struct FieldElem {
  Q a = 0;
  Q b = 0;
  bool operator==(const FieldElem& o) const { return a == o.a && b == o.b; }
  bool operator!=(const FieldElem& o) const { return !(*this == o); }
};

// Lattice (1/den) * span(rows) in coordinates over (1, omega).
// n=2: rows (a,0),(b,c) with a,c > 0 and 0 <= b < a.  n=1: row (a).
struct IdealHNF {
  int n = 2;
  Z a = 1, b = 0, c = 1;
  Z den = 1;
  bool operator==(const IdealHNF& o) const {
    return n == o.n && a == o.a && b == o.b && c == o.c && den == o.den;
  }
  bool operator!=(const IdealHNF& o) const { return !(*this == o); }
  std::vector<std::vector<Z>> matrix() const;
};

struct FieldData {
  long D = 1;
  int n = 1;
  long disc = 1;
  bool half = false;  // omega = (1+sqrt D)/2
  Z m0 = 0, m1 = 0;   // omega^2 = m1*omega + m0
  FieldElem omega;
  FieldElem eps0;
  IdealHNF different;
};

FieldData make_field(long D);

// element arithmetic
FieldElem fe(const Q& a, const Q& b = 0);
FieldElem add(const FieldElem& x, const FieldElem& y);
FieldElem sub(const FieldElem& x, const FieldElem& y);
FieldElem neg(const FieldElem& x);
FieldElem scale(const FieldElem& x, const Q& s);
FieldElem mul(const FieldData& F, const FieldElem& x, const FieldElem& y);
FieldElem pow(const FieldData& F, const FieldElem& x, long e);  // e may be negative
FieldElem conj(const FieldData& F, const FieldElem& x);
FieldElem inv(const FieldData& F, const FieldElem& x);
Q trace(const FieldData& F, const FieldElem& x);
Q norm(const FieldData& F, const FieldElem& x);
int sign_at(const FieldData& F, const FieldElem& x, int i);  // exact sign of sigma_i(x)
bool is_totally_positive(const FieldData& F, const FieldElem& x);
double embed(const FieldData& F, const FieldElem& x, int i);
FieldElem sqrt_d(const FieldData& F);
bool is_integral(const FieldElem& x);
std::string to_string(const FieldData& F, const FieldElem& x);

// ideals
IdealHNF unit_ideal(const FieldData& F);
IdealHNF ideal_from_gens(const FieldData& F, const std::vector<FieldElem>& gens);
IdealHNF principal(const FieldData& F, const FieldElem& x);
IdealHNF ideal_mul(const FieldData& F, const IdealHNF& I, const IdealHNF& J);
IdealHNF ideal_add(const FieldData& F, const IdealHNF& I, const IdealHNF& J);
IdealHNF ideal_inv(const FieldData& F, const IdealHNF& I);
IdealHNF ideal_conj(const FieldData& F, const IdealHNF& I);
IdealHNF ideal_pow(const FieldData& F, const IdealHNF& I, int e);
Q ideal_norm(const IdealHNF& I);
bool ideal_contains(const FieldData& F, const IdealHNF& I, const FieldElem& x);
bool ideal_is_integral(const IdealHNF& I);
Z ideal_min_integer(const IdealHNF& I);  // positive generator of I ∩ Z, I integral
std::vector<FieldElem> ideal_basis(const IdealHNF& I);
bool coprime(const FieldData& F, const IdealHNF& I, const IdealHNF& J);

struct PrimeIdeal {
  IdealHNF ideal;
  long ell;
  int degree;  // residue degree
};
std::vector<PrimeIdeal> primes_above(const FieldData& F, long ell);
std::vector<PrimeIdeal> primes_dividing(const FieldData& F, const IdealHNF& f);
std::string split_type(const FieldData& F, long ell);  // "split", "inert", "ramified"

// all integral ideals of norm m, lexicographic by (a,b,c)
std::vector<IdealHNF> ideals_of_norm(const FieldData& F, long m);
std::optional<FieldElem> find_generator(const FieldData& F, const IdealHNF& I);
std::optional<FieldElem> totally_positive_generator(const FieldData& F, const IdealHNF& I);

FieldElem totally_positive_unit(const FieldData& F);
std::pair<FieldElem, long> eplus_f_generator(const FieldData& F, const IdealHNF& f);

// residues of O/f for integral f
struct ResidueRing {
  int n = 1;
  int64_t a = 1, b = 0, c = 1;
  Z m0 = 0, m1 = 0;
  int64_t size() const { return a * c; }
  std::pair<int64_t, int64_t> reduce(const Z& x, const Z& y) const;
  std::pair<int64_t, int64_t> mul(std::pair<int64_t, int64_t> u, std::pair<int64_t, int64_t> v) const;
  int64_t index(std::pair<int64_t, int64_t> r) const { return r.second * a + r.first; }
};
ResidueRing residue_ring(const FieldData& F, const IdealHNF& f);

struct RayClassData {
  IdealHNF modulus;
  std::vector<IdealHNF> reps;
  std::vector<FieldElem> rep_gens;
  std::vector<std::vector<int>> mul_table;
  FieldElem eplus_gen;
  long eplus_exp = 1;

  // lookup state
  int n = 1;
  ResidueRing ring;
  std::vector<PrimeIdeal> bad_primes;
  std::vector<std::pair<std::pair<int64_t, int64_t>, int>> unit_images;
  std::unordered_map<uint64_t, int> key_to_class;
  int64_t group_order = 1;  // |(O/f)^* x {±1}^n|
  size_t size() const { return reps.size(); }
  int identity() const { return 0; }
  int inverse(int i) const;
};

struct RayOptions {
  int64_t max_residues = 1000000;
  long max_norm = 200000;
};

RayClassData ray_class_data(const FieldData& F, const IdealHNF& f, const RayOptions& opt = {});
uint64_t class_key(const RayClassData& R, std::pair<int64_t, int64_t> res, int signs);
bool is_unit_mod(const RayClassData& R, const FieldElem& x);
int class_of_element(const FieldData& F, const RayClassData& R, const FieldElem& x);
int class_of_ideal(const FieldData& F, const RayClassData& R, const IdealHNF& I);
int sign_bits(const FieldData& F, const FieldElem& x);

// chi(class i) = e(k[i]/M)
struct Character {
  std::vector<int64_t> k;
  int64_t M = 1;  // order
  bool even = true;
  bool operator==(const Character& o) const { return k == o.k && M == o.M; }
};
std::vector<Character> list_characters(const RayClassData& R, int64_t max_order);
std::vector<Character> list_even_characters(const RayClassData& R, int64_t max_order);
Character trivial_character(const RayClassData& R);

}  // namespace iwz
