#pragma once

#include <string>
#include <variant>

#include "mcq/gl2.hpp"
#include "mcq/projrational.hpp"
#include "mcq/quadsurd.hpp"

namespace mcq {

// A point of the boundary circle R u {inf}: either a cusp (rational or inf)
// or a real quadratic irrational.
using CirclePt = std::variant<ProjRational, QuadSurd>;

bool is_infinity(const CirclePt& x);
bool is_cusp(const CirclePt& x);

// Total order on the line with infinity greatest.  Exact; distinct
// representations of equal values compare equal (a rational surd can meet a
// cusp).
int cmp_circle(const CirclePt& x, const CirclePt& y);
bool circle_eq(const CirclePt& x, const CirclePt& y);

// Counterclockwise predicate for three distinct points, where the circle is
// oriented as the boundary of the upper half plane: (p,q,r) is ccw iff
// p<q<r up to cyclic rotation in the line order with inf greatest.
bool ccw(const CirclePt& p, const CirclePt& q, const CirclePt& r);

// Open / closed ccw arc from a to b (a != b): the points x with (a,x,b) ccw.
bool in_open_arc(const CirclePt& x, const CirclePt& a, const CirclePt& b);
bool in_closed_arc(const CirclePt& x, const CirclePt& a, const CirclePt& b);

// Do the unordered pairs {x1,x2} and {y1,y2} separate each other on the
// circle?  Requires all four distinct from their own partner; a shared
// endpoint between the pairs is reported via *shared and counts as not
// interleaved.
bool interleaved(const CirclePt& x1, const CirclePt& x2, const CirclePt& y1,
                 const CirclePt& y2, bool* shared = nullptr);

CirclePt mobius(const Mat2& m, const CirclePt& x);

double approx(const CirclePt& x);  // inf -> HUGE_VAL, for rendering only
std::string circle_str(const CirclePt& x);

}  // namespace mcq
