#pragma once

#include <cstdint>
#include <vector>

#include "iwz/rational.hpp"

namespace iwz {

struct PadicInt {
  long p = 2;
  int N = 1;
  int64_t value = 0;  // in [0, p^N)
  int64_t modulus() const { return ipow(p, N); }
  bool operator==(const PadicInt& o) const { return p == o.p && N == o.N && value == o.value; }
};

PadicInt padic(long p, int N, int64_t v);
PadicInt padic_from_rational(const Q& r, long p, int N);
PadicInt operator+(const PadicInt& x, const PadicInt& y);
PadicInt operator-(const PadicInt& x, const PadicInt& y);
PadicInt operator*(const PadicInt& x, const PadicInt& y);
PadicInt padic_inv(const PadicInt& x);
PadicInt padic_pow(const PadicInt& x, int64_t e);
int valuation(const PadicInt& x);  // min(N, v_p)
bool is_unit(const PadicInt& x);

long q_of(long p);                 // 4 if p = 2 else p
int vq(long p);                    // v_p(q)
int64_t default_u(long p);         // 1+p, or 5 for p = 2
long primitive_root(long p);

PadicInt teichmuller(const PadicInt& a);
PadicInt angle(const PadicInt& a);
PadicInt iwasawa_log(const PadicInt& w);
PadicInt ell_u(const PadicInt& a, const PadicInt& u);
PadicInt embed_root(long c, long k, long p, int N);

// L_u(t) mod p^level for t mod q*p^level, built from powers of u.
struct LuTable {
  long p = 2;
  int level = 0;
  int64_t pl = 1;   // p^level
  int64_t qpl = 1;  // q*p^level
  std::vector<int32_t> table;  // -1 on non-units
  int32_t operator()(int64_t t) const { return table[mod_floor(t, qpl)]; }
};
LuTable make_lu_table(long p, int level, int64_t u);

// <t> mod q*p^level as an index in [0, q*p^level)
struct AngleTable {
  long p = 2;
  int level = 0;
  int64_t qpl = 1;
  std::vector<int64_t> table;  // -1 on non-units
  int64_t operator()(int64_t t) const { return table[mod_floor(t, qpl)]; }
};
AngleTable make_angle_table(long p, int level);

}  // namespace iwz
