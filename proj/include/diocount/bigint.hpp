#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace diocount {

// Exact solution counts overflow machine words already at modest sizes
// (C(n+s-1, s-1) passes 2^64 around n=70, s=10), so counts are
// arbitrary-precision from the start.
using BigInt = mpz_class;
using Rational = mpq_class;

inline BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline BigInt pow_big(unsigned long base, unsigned long exp) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

// Natural log of a positive BigInt, usable far beyond double range.
// Values below 2^53 go through std::log of the exact double so that
// log_big(BigInt(n)) is bit-identical to std::log(double(n)).
double log_big(const BigInt& z);

// Reduced rational from machine integers.
Rational make_rational(long long num, unsigned long long den);

std::string rational_str(const Rational& q);  // "5/12", or "2" when integral

}  // namespace diocount
