#pragma once

// Shared test helpers: a portable deterministic RNG (std:: distributions are
// not bit-stable across standard libraries) and decimal-interval sign
// oracles for surd expressions, independent of the library's sign algebra.

#include <cstdint>

#include "mcq/integer.hpp"
#include "mcq/rational.hpp"

namespace testutil {

struct XorShift64 {
  std::uint64_t s;
  explicit XorShift64(std::uint64_t seed = 0x9e3779b97f4a7c15ull) : s(seed) {}
  std::uint64_t next() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  }
  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) { return next() % n; }
  long range(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
};

inline mcq::Rational random_rational(XorShift64& rng, long span = 20) {
  long n = rng.range(-span, span);
  long d = rng.range(1, span);
  return mcq::make_rational(n, d);
}

inline mcq::Integer pow10(int d) {
  mcq::Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(d));
  return r;
}

// Floor of |B| * sqrt(D) * 10^d.
inline mcq::Integer scaled_root(const mcq::Integer& B, const mcq::Integer& D, int d) {
  mcq::Integer t = B * B * D * pow10(2 * d);
  return mcq::isqrt(t);
}

// Sign of A + B*sqrt(D) by decimal interval refinement; falls back to the
// exact zero condition A^2 == B^2 D (with opposite signs) only when the
// interval keeps straddling zero.
inline int interval_surd_sign(const mcq::Integer& A, const mcq::Integer& B,
                              const mcq::Integer& D) {
  using mcq::Integer;
  for (int d = 8; d <= 256; d *= 2) {
    Integer scale = pow10(d);
    Integer root = scaled_root(B, D, d);
    Integer lo, hi;
    if (mcq::sgn(B) >= 0) {
      lo = A * scale + root;
      hi = A * scale + root + 1;
    } else {
      lo = A * scale - root - 1;
      hi = A * scale - root;
    }
    if (mcq::sgn(lo) > 0) return 1;
    if (mcq::sgn(hi) < 0) return -1;
  }
  if (mcq::sgn(A) == 0 && mcq::sgn(B) == 0) return 0;
  if (A * A == B * B * D && mcq::sgn(A) != mcq::sgn(B)) return 0;
  return 0;  // unreachable for the magnitudes used in tests
}

// Sign of A + B*sqrt(D1) + C*sqrt(D2), same approach with two roots.
inline int interval_surd_sign2(const mcq::Integer& A, const mcq::Integer& B,
                               const mcq::Integer& D1, const mcq::Integer& C,
                               const mcq::Integer& D2) {
  using mcq::Integer;
  for (int d = 8; d <= 512; d *= 2) {
    Integer scale = pow10(d);
    Integer r1 = scaled_root(B, D1, d);
    Integer r2 = scaled_root(C, D2, d);
    Integer lo = A * scale, hi = A * scale;
    if (mcq::sgn(B) >= 0) {
      lo += r1;
      hi += r1 + 1;
    } else {
      lo += -r1 - 1;
      hi += -r1;
    }
    if (mcq::sgn(C) >= 0) {
      lo += r2;
      hi += r2 + 1;
    } else {
      lo += -r2 - 1;
      hi += -r2;
    }
    if (mcq::sgn(lo) > 0) return 1;
    if (mcq::sgn(hi) < 0) return -1;
  }
  return 0;  // exact zero: B^2 D1 == C^2 D2 with B, C opposite and A == 0, etc.
}

}  // namespace testutil
