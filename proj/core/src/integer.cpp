#include "mcq/integer.hpp"

#include <stdexcept>

namespace mcq {

Integer isqrt(const Integer& a) {
  if (sgn(a) < 0) throw std::domain_error("isqrt of negative");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
  return r;
}

bool is_perfect_square(const Integer& a) {
  if (sgn(a) < 0) return false;
  return mpz_perfect_square_p(a.get_mpz_t()) != 0;
}

void squarefree_decompose(const Integer& v, Integer& d, Integer& s) {
  if (sgn(v) <= 0) throw std::domain_error("squarefree_decompose needs v > 0");
  Integer rest = v;
  d = 1;
  s = 1;
  auto strip = [&](const Integer& p) {
    int e = 0;
    while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
      rest /= p;
      ++e;
    }
    if (e & 1) d *= p;
    for (int i = 0; i < e / 2; ++i) s *= p;
  };
  strip(Integer(2));
  strip(Integer(3));
  const long bound = 1000000;
  for (long p = 5; p <= bound; p += 6) {
    Integer pp(p);
    if (pp * pp > rest) break;
    strip(pp);
    Integer pq(p + 2);
    if (pq * pq > rest) break;
    strip(pq);
  }
  if (rest == 1) return;
  if (is_perfect_square(rest)) {
    s *= isqrt(rest);
    return;
  }
  Integer limit_sq = Integer(bound) * bound;
  if (rest < limit_sq) {  // all factors of rest exceed the trial bound
    d *= rest;            // so rest is prime here
    return;
  }
  if (mpz_probab_prime_p(rest.get_mpz_t(), 40) != 0) {
    d *= rest;
    return;
  }
  // Composite, not a square, every prime factor > 10^6.  Below 10^18 the only
  // such shape is p*q with p != q, which is squarefree; beyond that p^2*q
  // becomes possible and we refuse to guess.
  Integer certify_limit("1000000000000000000");
  if (rest < certify_limit) {
    d *= rest;
    return;
  }
  throw std::overflow_error("squarefree_decompose: cofactor too large to certify");
}

}  // namespace mcq
