#pragma once

#include <gmpxx.h>

#include <climits>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace iwz {

using Q = mpq_class;
using Z = mpz_class;

// Error carrying a stable code string ("NotRational", "PAdicPole", ...).
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

[[noreturn]] void fail(const std::string& code, const std::string& msg);

constexpr int kInfVal = INT_MAX;

std::string to_string(const Q& x);  // always "p/q"
Q parse_rational(const std::string& s);

int vp(const Z& x, long p);  // kInfVal for 0
int vp(const Q& x, long p);

Z floor_q(const Q& x);
Q frac(const Q& x);  // x - floor(x), in [0,1)

int64_t mod_floor(int64_t a, int64_t m);
int64_t z_mod(const Z& x, int64_t m);  // in [0, m)
int64_t ipow(int64_t b, int e);
int64_t mulmod(int64_t a, int64_t b, int64_t m);
int64_t powmod(int64_t b, int64_t e, int64_t m);
int64_t invmod(int64_t a, int64_t m);  // throws PAdicPole if not invertible

Z binom(long n, long k);
Z factorial(long n);
bool is_prime(long n);
long next_prime(long n);  // smallest prime > n

}  // namespace iwz
