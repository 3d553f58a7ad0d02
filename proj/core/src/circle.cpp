#include "mcq/circle.hpp"

#include <cmath>

namespace mcq {

bool is_infinity(const CirclePt& x) {
  if (auto* c = std::get_if<ProjRational>(&x)) return c->is_infinity();
  return false;
}

bool is_cusp(const CirclePt& x) {
  if (std::holds_alternative<ProjRational>(x)) return true;
  return std::get<QuadSurd>(x).is_rational();
}

static int cmp_proj(const ProjRational& x, const ProjRational& y) {
  if (x == y) return 0;
  if (x.is_infinity()) return 1;
  if (y.is_infinity()) return -1;
  return sgn(x.p * y.q - y.p * x.q);
}

int cmp_circle(const CirclePt& x, const CirclePt& y) {
  const auto* cx = std::get_if<ProjRational>(&x);
  const auto* cy = std::get_if<ProjRational>(&y);
  if (cx && cy) return cmp_proj(*cx, *cy);
  if (cx) {
    if (cx->is_infinity()) return 1;  // surds are finite
    return -cmp(std::get<QuadSurd>(y), cx->value());
  }
  if (cy) {
    if (cy->is_infinity()) return -1;
    return cmp(std::get<QuadSurd>(x), cy->value());
  }
  return cmp(std::get<QuadSurd>(x), std::get<QuadSurd>(y));
}

bool circle_eq(const CirclePt& x, const CirclePt& y) { return cmp_circle(x, y) == 0; }

bool ccw(const CirclePt& p, const CirclePt& q, const CirclePt& r) {
  int pq = cmp_circle(p, q), qr = cmp_circle(q, r), rp = cmp_circle(r, p);
  if (pq == 0 || qr == 0 || rp == 0) return false;
  bool a = pq < 0, b = qr < 0, c = rp < 0;
  // ccw iff p<q<r up to cyclic rotation
  return (a && b) || (b && c) || (c && a);
}

bool in_open_arc(const CirclePt& x, const CirclePt& a, const CirclePt& b) {
  return ccw(a, x, b);
}

bool in_closed_arc(const CirclePt& x, const CirclePt& a, const CirclePt& b) {
  return circle_eq(x, a) || circle_eq(x, b) || ccw(a, x, b);
}

bool interleaved(const CirclePt& x1, const CirclePt& x2, const CirclePt& y1,
                 const CirclePt& y2, bool* shared) {
  if (shared) *shared = false;
  if (circle_eq(x1, y1) || circle_eq(x1, y2) || circle_eq(x2, y1) ||
      circle_eq(x2, y2)) {
    if (shared) *shared = true;
    return false;
  }
  return in_open_arc(y1, x1, x2) != in_open_arc(y2, x1, x2);
}

CirclePt mobius(const Mat2& m, const CirclePt& x) {
  if (auto* c = std::get_if<ProjRational>(&x)) return m.apply(*c);
  const QuadSurd& s = std::get<QuadSurd>(x);
  if (s.is_rational()) {
    Rational v = s.rational_value();
    return m.apply(ProjRational(v));
  }
  return mobius(m, s);
}

double approx(const CirclePt& x) {
  if (auto* c = std::get_if<ProjRational>(&x)) {
    if (c->is_infinity()) return HUGE_VAL;
    return c->value().get_d();
  }
  return std::get<QuadSurd>(x).approx();
}

std::string circle_str(const CirclePt& x) {
  if (auto* c = std::get_if<ProjRational>(&x)) return c->str();
  return std::get<QuadSurd>(x).str();
}

}  // namespace mcq
