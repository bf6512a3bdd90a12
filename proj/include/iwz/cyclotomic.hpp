#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "iwz/rational.hpp"

namespace iwz {

// Element of Q(zeta_M), polynomial in zeta_M reduced mod Phi_M.
struct CycloElem {
  int64_t M = 1;
  std::vector<Q> c;  // length phi(M)
  bool operator==(const CycloElem& o) const { return M == o.M && c == o.c; }
  bool operator!=(const CycloElem& o) const { return !(*this == o); }
  bool is_zero() const;
};

int64_t euler_phi(int64_t M);
const std::vector<Z>& cyclotomic_poly(int64_t M);  // coefficients, low degree first

CycloElem cyclo_const(int64_t M, const Q& q);
CycloElem root_of_unity(int64_t M, int64_t k);
CycloElem operator+(const CycloElem& x, const CycloElem& y);
CycloElem operator-(const CycloElem& x, const CycloElem& y);
CycloElem operator-(const CycloElem& x);
CycloElem operator*(const CycloElem& x, const CycloElem& y);
CycloElem operator*(const CycloElem& x, const Q& s);
CycloElem& operator+=(CycloElem& x, const CycloElem& y);
CycloElem invert(const CycloElem& x);
CycloElem galois(const CycloElem& x, int64_t t);  // zeta -> zeta^t, gcd(t, M) = 1
bool is_rational(const CycloElem& x);
Q extract_rational(const CycloElem& x);
std::string to_string(const CycloElem& x);

// residue of r mod p^N; PAdicPole when p divides the denominator
int64_t reduce_mod_pN(const Q& r, long p, int N);

// Truncated power series in nvars variables with CycloElem coefficients.
struct TruncatedSeries {
  int nvars = 1;
  int max_total_degree = 0;
  int64_t M = 1;
  std::map<std::vector<int>, CycloElem> coeffs;
};

TruncatedSeries series_zero(int nvars, int deg, int64_t M);
TruncatedSeries series_const(int nvars, int deg, const CycloElem& c);
TruncatedSeries series_var(int nvars, int deg, int64_t M, int i, const Q& scale = 1);
TruncatedSeries operator+(const TruncatedSeries& A, const TruncatedSeries& B);
TruncatedSeries operator*(const TruncatedSeries& A, const TruncatedSeries& B);
TruncatedSeries operator*(const TruncatedSeries& A, const CycloElem& s);
TruncatedSeries series_exp(const TruncatedSeries& A);      // A(0) = 0
TruncatedSeries series_inverse(const TruncatedSeries& A);  // A(0) invertible
CycloElem series_coefficient(const TruncatedSeries& F, const std::vector<int>& target);

}  // namespace iwz
