#pragma once

#include <cstdint>
#include <vector>

#include "iwz/rational.hpp"

namespace iwz {

// sum_k b_k (1+T)^k modulo (1+T)^period - 1, with b_k in Z/p^N.
// period is p^ell for L_u-indexed series and q*p^ell for <.>-indexed ones.
struct IwasawaPoly {
  long p = 2;
  int N = 1;
  int ell = 0;
  int64_t period = 1;
  std::vector<int64_t> coeffs;
  int64_t modulus() const { return ipow(p, N); }
  bool operator==(const IwasawaPoly& o) const {
    return p == o.p && N == o.N && period == o.period && coeffs == o.coeffs;
  }
};

IwasawaPoly make_poly(long p, int N, int ell, int64_t period = 0);  // period 0 means p^ell
IwasawaPoly operator+(const IwasawaPoly& a, const IwasawaPoly& b);
IwasawaPoly operator-(const IwasawaPoly& a, const IwasawaPoly& b);
IwasawaPoly poly_scale(const IwasawaPoly& a, int64_t s);
IwasawaPoly poly_shift(const IwasawaPoly& a, int64_t j);  // times (1+T)^j
void poly_add_term(IwasawaPoly& a, int64_t k, int64_t b);
int64_t evaluate_at(const IwasawaPoly& a, int64_t s, int64_t u);  // T = u^s - 1
int mu_invariant(const IwasawaPoly& a);  // kInfVal when every coefficient vanishes
int64_t mu_witness(const IwasawaPoly& a);  // first index attaining the minimum, -1 if none
std::vector<int64_t> sorted_coeffs(const IwasawaPoly& a);

}  // namespace iwz
