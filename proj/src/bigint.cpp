#include "diocount/bigint.hpp"

#include <cmath>
#include <stdexcept>

namespace diocount {

double log_big(const BigInt& z) {
  if (sgn(z) <= 0) throw std::domain_error("log_big: argument must be positive");
  if (mpz_sizeinbase(z.get_mpz_t(), 2) <= 53) return std::log(z.get_d());
  signed long exp2 = 0;
  double d = mpz_get_d_2exp(&exp2, z.get_mpz_t());  // z = d * 2^exp2, d in [0.5, 1)
  return std::log(d) + static_cast<double>(exp2) * M_LN2;
}

Rational make_rational(long long num, unsigned long long den) {
  if (den == 0) throw std::domain_error("make_rational: zero denominator");
  Rational q(BigInt(static_cast<long>(num)), BigInt(static_cast<unsigned long>(den)));
  q.canonicalize();
  return q;
}

std::string rational_str(const Rational& q) { return q.get_str(); }

}  // namespace diocount
