#pragma once

// Exact arithmetic on GMP integers and rationals.

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace hirelab {

using BigInt = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, unsigned long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline BigInt factorial(unsigned long n) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

inline BigInt pow(const BigInt& base, unsigned long exp) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

inline Rational pow(const Rational& base, unsigned long exp) {
  Rational out(pow(BigInt(base.get_num()), exp), pow(BigInt(base.get_den()), exp));
  return out;  // already canonical: gcd(a^k, b^k) = 1
}

/// 2^k as an integer.
inline BigInt pow2(unsigned long k) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, k);
  return out;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

/// "p/q", or "p" when q = 1.
inline std::string to_string(const Rational& r) {
  if (is_integer(r)) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline std::string to_string(const BigInt& z) { return z.get_str(); }

inline double to_double(const Rational& r) { return r.get_d(); }

/// Parse "p/q" or "p".
inline Rational parse_rational(const std::string& text) {
  Rational r(text);
  r.canonicalize();
  return r;
}

}  // namespace hirelab
