#include "mcq/quadsurd.hpp"

#include <cmath>
#include <stdexcept>

#include "mcq/gl2.hpp"

namespace mcq {

void QuadSurd::normalize() {
  if (sgn(c) == 0) throw std::invalid_argument("surd with zero denominator");
  if (sgn(D) <= 0) throw std::invalid_argument("surd with non-positive radicand");
  if (sgn(b) != 0) {
    Integer d, s;
    squarefree_decompose(D, d, s);
    D = d;
    b *= s;
    if (D == 1) {  // the root collapsed to an integer
      a += b;
      b = 0;
    }
  }
  if (sgn(b) == 0) D = 1;
  if (sgn(c) < 0) {
    a = -a;
    b = -b;
    c = -c;
  }
  Integer g = igcd(igcd(a, b), c);
  a /= g;
  b /= g;
  c /= g;
}

Rational QuadSurd::rational_value() const {
  if (!is_rational()) throw std::domain_error("rational_value of an irrational surd");
  return make_rational(a, c);
}

QuadSurd QuadSurd::operator-() const {
  QuadSurd r = *this;
  r.a = -r.a;
  r.b = -r.b;
  return r;
}

QuadSurd QuadSurd::operator+(const Rational& r) const {
  return QuadSurd(a * den(r) + num(r) * c, b * den(r), c * den(r), D);
}

QuadSurd QuadSurd::operator*(const Rational& r) const {
  if (sgn(r) == 0) return QuadSurd(Rational(0));
  return QuadSurd(a * num(r), b * num(r), c * den(r), D);
}

QuadSurd QuadSurd::add_same_field(const QuadSurd& o) const {
  if (!is_rational() && !o.is_rational() && D != o.D)
    throw std::domain_error("surd addition across distinct fields");
  const Integer& DD = is_rational() ? o.D : D;
  return QuadSurd(a * o.c + o.a * c, b * o.c + o.b * c, c * o.c, DD);
}

QuadSurd QuadSurd::mul_same_field(const QuadSurd& o) const {
  if (!is_rational() && !o.is_rational() && D != o.D)
    throw std::domain_error("surd multiplication across distinct fields");
  const Integer& DD = is_rational() ? o.D : D;
  return QuadSurd(a * o.a + b * o.b * DD, a * o.b + b * o.a, c * o.c, DD);
}

double QuadSurd::approx() const {
  return (a.get_d() + b.get_d() * std::sqrt(D.get_d())) / c.get_d();
}

std::string QuadSurd::str() const {
  if (is_rational()) return rat_str(rational_value());
  return "(" + a.get_str() + "+" + b.get_str() + "*sqrt(" + D.get_str() + "))/" +
         c.get_str();
}

int surd_sign(const Integer& A, const Integer& B, const Integer& D) {
  int sa = sgn(A), sb = sgn(B);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare magnitudes via A^2 vs B^2 D.
  return sa * sgn(A * A - B * B * D);
}

int surd_sign2(const Integer& A, const Integer& B, const Integer& D1,
               const Integer& C, const Integer& D2) {
  int sp = surd_sign(A, B, D1);
  int sq = sgn(C);
  if (sq == 0) return sp;
  if (sp == 0) return sq;
  if (sp == sq) return sp;
  // X = P + Q with P = A + B sqrt(D1), Q = C sqrt(D2) of opposite signs:
  // sign(X) = sign(P) * sign(P^2 - Q^2), and
  // P^2 - Q^2 = (A^2 + B^2 D1 - C^2 D2) + 2AB sqrt(D1).
  int t = surd_sign(A * A + B * B * D1 - C * C * D2, 2 * A * B, D1);
  return sp * t;
}

int cmp(const QuadSurd& x, const QuadSurd& y) {
  // x - y over the positive denominator c_x c_y:
  Integer A = x.a * y.c - y.a * x.c;
  Integer B = x.b * y.c;
  Integer C = -(y.b * x.c);
  if (sgn(B) == 0 && sgn(C) == 0) return sgn(A);
  if (sgn(C) == 0) return surd_sign(A, B, x.D);
  if (sgn(B) == 0) return surd_sign(A, C, y.D);
  if (x.D == y.D) return surd_sign(A, B + C, x.D);
  return surd_sign2(A, B, x.D, C, y.D);
}

int cmp(const QuadSurd& x, const Rational& y) { return cmp(x, QuadSurd(y)); }

QuadSurd mobius(const Mat2& m, const QuadSurd& x) {
  if (m.det() == 0) throw std::domain_error("mobius by singular matrix");
  // (m.a x + m.b) / (m.c x + m.d) with x = (a + b sqrt(D)) / c:
  Integer p = m.a * x.a + m.b * x.c;
  Integer q = m.a * x.b;
  Integer r = m.c * x.a + m.d * x.c;
  Integer s = m.c * x.b;
  Integer denom = r * r - s * s * x.D;
  if (sgn(denom) == 0) throw std::domain_error("mobius image of infinity");
  return QuadSurd(p * r - q * s * x.D, q * r - p * s, denom, x.D);
}

}  // namespace mcq
