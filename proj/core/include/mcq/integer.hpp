#pragma once

#include <gmpxx.h>

#include <string>

namespace mcq {

// Arbitrary-precision integer. All arithmetic in the library that feeds a
// geometric predicate goes through this type (or Rational); no doubles.
using Integer = mpz_class;

inline int sgn(const Integer& a) { return mpz_sgn(a.get_mpz_t()); }

inline Integer igcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer ilcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer iabs(const Integer& a) {
  Integer r;
  mpz_abs(r.get_mpz_t(), a.get_mpz_t());
  return r;
}

// Floor of sqrt(a); a must be >= 0.
Integer isqrt(const Integer& a);

bool is_perfect_square(const Integer& a);

// Writes v = d * s^2 with d squarefree, for v > 0.  Uses trial division up to
// 10^6 plus a primality test on the cofactor; if the cofactor is too large to
// certify squarefree (>= 10^18, composite, not a perfect square) this throws
// std::overflow_error rather than guess.
void squarefree_decompose(const Integer& v, Integer& d, Integer& s);

}  // namespace mcq
