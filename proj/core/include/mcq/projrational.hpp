#pragma once

#include <stdexcept>
#include <string>

#include "mcq/rational.hpp"

namespace mcq {

// Point of the rational projective line: p/q with gcd(p,q)=1, q>=0, and the
// point at infinity stored as (1,0).  These are the cusps / ideal triangle
// vertices; ordering and arithmetic on them stay exact.
struct ProjRational {
  Integer p{0}, q{1};

  ProjRational() = default;
  ProjRational(const Integer& pp, const Integer& qq) : p(pp), q(qq) { normalize(); }
  ProjRational(long pp, long qq) : p(pp), q(qq) { normalize(); }
  explicit ProjRational(const Rational& r) : p(num(r)), q(den(r)) {}

  static ProjRational infinity() {
    ProjRational x;
    x.p = 1;
    x.q = 0;
    return x;
  }

  void normalize() {
    if (sgn(p) == 0 && sgn(q) == 0)
      throw std::invalid_argument("projective point (0,0)");
    Integer g = igcd(p, q);
    p /= g;
    q /= g;
    if (sgn(q) < 0 || (sgn(q) == 0 && sgn(p) < 0)) {
      p = -p;
      q = -q;
    }
  }

  bool is_infinity() const { return sgn(q) == 0; }

  Rational value() const {
    if (is_infinity()) throw std::domain_error("value() of infinity");
    return make_rational(p, q);
  }

  bool operator==(const ProjRational& o) const { return p == o.p && q == o.q; }
  bool operator!=(const ProjRational& o) const { return !(*this == o); }

  // Total order with infinity greatest: used only for deterministic listings,
  // not for geometry (the circle has no intrinsic order).
  bool operator<(const ProjRational& o) const {
    if (is_infinity()) return false;
    if (o.is_infinity()) return true;
    return p * o.q < o.p * q;  // both q > 0
  }

  std::string str() const {
    if (is_infinity()) return "inf";
    if (q == 1) return p.get_str();
    return p.get_str() + "/" + q.get_str();
  }
};

inline ProjRational proj_parse(const std::string& s) {
  if (s == "inf" || s == "-inf") return ProjRational::infinity();
  Rational r = rat_parse(s);
  return ProjRational(r);
}

}  // namespace mcq
