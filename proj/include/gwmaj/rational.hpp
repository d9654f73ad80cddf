#pragma once

#include <gmpxx.h>

#include <string>

namespace gwmaj {

using Rational = mpq_class;
using BigInt = mpz_class;

/// num/den in canonical form (the two-argument mpq_class constructor does not reduce).
inline Rational ratio(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline BigInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

inline BigInt factorial(long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

/// n (n-1) ... (n-len+1); len = 0 gives 1. Works for negative n.
inline BigInt falling_factorial(long n, long len) {
  BigInt r = 1;
  for (long i = 0; i < len; ++i) r *= n - i;
  return r;
}

inline Rational pow(const Rational& base, unsigned long e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
  r.canonicalize();
  return r;
}

/// 2^{-e} as an exact rational.
inline Rational inverse_power_of_two(unsigned long e) {
  Rational r = 1;
  mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), e);
  return r;
}

/// Exact conversion of a finite double (a dyadic rational).
inline Rational from_double(double x) { return Rational(x); }

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline int sign(const Rational& q) { return sgn(q); }

}  // namespace gwmaj
