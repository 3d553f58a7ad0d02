#pragma once

#include <string>

#include "mcq/projrational.hpp"
#include "mcq/rational.hpp"

namespace mcq {

// Real quadratic surd (a + b*sqrt(D)) / c in canonical form:
//   c > 0, gcd(a, b, c) = 1, D squarefree and positive,
//   b == 0 iff D == 1   (so plain rationals embed with D = 1, b = 0).
// Fixed points of integer Mobius maps land here; comparisons are exact sign
// computations, no floating point.
struct QuadSurd {
  Integer a{0}, b{0}, c{1}, D{1};

  QuadSurd() = default;
  QuadSurd(const Integer& a_, const Integer& b_, const Integer& c_, const Integer& D_)
      : a(a_), b(b_), c(c_), D(D_) {
    normalize();
  }
  explicit QuadSurd(const Rational& r) : a(num(r)), b(0), c(den(r)), D(1) {}

  void normalize();

  bool is_rational() const { return sgn(b) == 0; }
  Rational rational_value() const;  // requires is_rational()

  QuadSurd operator-() const;
  QuadSurd operator+(const Rational& r) const;
  QuadSurd operator*(const Rational& r) const;

  // Both operands must live in the same field (equal D after normalization,
  // or one of them rational).
  QuadSurd add_same_field(const QuadSurd& o) const;
  QuadSurd mul_same_field(const QuadSurd& o) const;

  double approx() const;
  std::string str() const;  // "(a+b*sqrt(D))/c", rationals as "p/q"

  bool operator==(const QuadSurd& o) const {
    return a == o.a && b == o.b && c == o.c && D == o.D;
  }
  bool operator!=(const QuadSurd& o) const { return !(*this == o); }
};

// Exact sign of A + B*sqrt(D), D > 0 squarefree (D = 1 allowed).
int surd_sign(const Integer& A, const Integer& B, const Integer& D);

// Exact sign of A + B*sqrt(D1) + C*sqrt(D2), D1 != D2 both squarefree > 0.
// Splits on the signs of P = A + B*sqrt(D1) and Q = -C*sqrt(D2); when they
// agree the answer is immediate, otherwise sign(P^2 - Q^2) decides (and
// P^2 - Q^2 lives back in the single field Q(sqrt(D1))).
int surd_sign2(const Integer& A, const Integer& B, const Integer& D1,
               const Integer& C, const Integer& D2);

// Three-way exact comparison.
int cmp(const QuadSurd& x, const QuadSurd& y);
inline bool operator<(const QuadSurd& x, const QuadSurd& y) { return cmp(x, y) < 0; }

int cmp(const QuadSurd& x, const Rational& y);

// Image under the Mobius map (a x + b) / (c x + d) given by an integer matrix
// with nonzero determinant.  The input must not be the preimage of infinity
// (our callers apply these only to irrational fixed points, where that cannot
// happen); if it is, this throws.
struct Mat2;
QuadSurd mobius(const Mat2& m, const QuadSurd& x);

}  // namespace mcq
