#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "mcq/integer.hpp"

namespace mcq {

// Exact rational, canonical form (gcd(num,den)=1, den>0) maintained by GMP.
// Construct through make_rational / rat_parse so the canonicalization step is
// never skipped; mpq_class(a,b) alone does not reduce.
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (sgn(den) == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational make_rational(long num, long den = 1) {
  return make_rational(Integer(num), Integer(den));
}

inline const Integer& num(const Rational& q) { return q.get_num(); }
inline const Integer& den(const Rational& q) { return q.get_den(); }
inline int sgn(const Rational& q) { return ::sgn(q); }

// "p/q", or just "p" when q == 1.
inline std::string rat_str(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Accepts "p", "p/q", leading '-'.
inline Rational rat_parse(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return make_rational(Integer(s), Integer(1));
    return make_rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("bad rational literal: " + s);
  }
}

using Vec = std::vector<Rational>;

inline Vec vec_sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec vec_add(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec vec_scale(const Rational& t, const Vec& a) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = t * a[i];
  return r;
}

inline Rational dot(const Vec& a, const Vec& b) {
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rational squared_distance(const Vec& a, const Vec& b) {
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    Rational d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline std::string vec_str(const Vec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += rat_str(v[i]);
  }
  return s + ")";
}

}  // namespace mcq
