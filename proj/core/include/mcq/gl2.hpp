#pragma once

#include <string>
#include <vector>

#include "mcq/projrational.hpp"

namespace mcq {

// Integer 2x2 matrix [[a,b],[c,d]], used as an element of PSL(2,Z) acting on
// the boundary circle R u {inf} by x -> (ax+b)/(cx+d).  Determinant 1 is
// required by most operations; psl_normalize() picks a canonical sign so a
// matrix can serve as a map key.
struct Mat2 {
  Integer a{1}, b{0}, c{0}, d{1};

  Mat2() = default;
  Mat2(Integer a_, Integer b_, Integer c_, Integer d_)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}

  static Mat2 identity() { return Mat2(1, 0, 0, 1); }
  // The two parabolic generators of the tessellation walk and the standard
  // involution / order-3 rotation.
  static Mat2 gen_L() { return Mat2(1, 0, 1, 1); }
  static Mat2 gen_R() { return Mat2(1, 1, 0, 1); }
  static Mat2 gen_S() { return Mat2(0, -1, 1, 0); }   // x -> -1/x, order 2
  static Mat2 gen_T() { return Mat2(1, 1, 0, 1); }    // x -> x+1
  static Mat2 gen_U() { return Mat2(0, 1, -1, 1); }   // 0 -> 1 -> inf -> 0, order 3

  Integer det() const { return a * d - b * c; }
  Integer trace() const { return a + d; }

  Mat2 operator*(const Mat2& o) const {
    return Mat2(a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d);
  }

  Mat2 inverse() const;  // requires det == +-1

  // Flip the overall sign into canonical position: c > 0, or c == 0 and a > 0.
  void psl_normalize();

  bool psl_equal(const Mat2& o) const;
  bool is_identity_psl() const;

  ProjRational apply(const ProjRational& x) const {
    return ProjRational(a * x.p + b * x.q, c * x.p + d * x.q);
  }

  std::string str() const;
  std::string key() const;  // canonical PSL2 key, usable in maps
};

// Parse a word over the alphabet L,R,S,T,U (uppercase) and l,r,s,t,u
// (lowercase = inverse letter) into a matrix, left letter applied last:
// word "LR" means the map L o R.
Mat2 word_to_matrix(const std::string& word);

// Express m (det 1) as a word in S and T, verified by recomposition; returns
// letters like "TTSt..." with lowercase t for T^-1.  Used when a caller needs
// a generator decomposition of an arbitrary group element.
std::string matrix_to_st_word(const Mat2& m);

}  // namespace mcq
