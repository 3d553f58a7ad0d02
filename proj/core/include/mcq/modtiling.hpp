#pragma once

#include <array>
#include <string>
#include <vector>

#include "mcq/circle.hpp"
#include "mcq/gl2.hpp"
#include "mcq/projrational.hpp"

namespace mcq {

// The ideal-triangle tessellation generated from the base triangle
// (0, 1, inf).  An edge is stored oriented: its "far" side is the open ccw
// arc from a to b, the side away from the base triangle.  Each edge has two
// completion vertices (primitive-vector sum and difference of its
// endpoints); the one inside the far arc spawns the two child edges.
struct TileEdge {
  ProjRational a, b;
  std::string addr;  // "e0".."e2" for the base edges, then '0'/'1' per descent

  std::string key() const {  // unordered endpoint key
    const ProjRational& lo = a < b ? a : b;
    const ProjRational& hi = a < b ? b : a;
    return lo.str() + "~" + hi.str();
  }
};

std::array<ProjRational, 3> base_triangle();  // (0, 1, inf), ccw
std::array<TileEdge, 3> base_edges();         // (0,1), (1,inf), (inf,0)

// Sum and difference completions of the edge's primitive vectors.
std::array<ProjRational, 2> edge_completions(const TileEdge& e);
// The completion lying inside the open far arc.
ProjRational far_completion(const TileEdge& e);
// Children (a,w) and (w,b), far arcs nested inside the parent's.
std::array<TileEdge, 2> child_edges(const TileEdge& e);

// Classification of the closed far arcs of two edges.
enum class ArcRelation {
  Equal,
  Complement,         // same endpoints, opposite orientation
  Nested12,           // far(e1) inside far(e2)
  Nested21,
  DisjointInteriors,  // open arcs disjoint (closures may share an endpoint)
  Crossing,           // endpoints interleave; never happens between tessellation edges
};
ArcRelation arc_relation(const TileEdge& e1, const TileEdge& e2);

// Levels of the expansion: level(0) returns the three base edges; level(m)
// the 3 * 2^m boundary edges at depth m, in deterministic order (children of
// level m-1 in order, sum-side child first).
class Tiling {
 public:
  Tiling();
  const std::vector<TileEdge>& level(int m);
  int built_depth() const { return static_cast<int>(levels_.size()) - 1; }

 private:
  std::vector<std::vector<TileEdge>> levels_;
};

// Maximal nested sequence of far arcs containing x, outermost first.
// When x hits a tessellation vertex the arcs keep converging from the side
// of smaller circle values (the chosen arc ends at x) and unique is false.
struct NestingResult {
  std::vector<TileEdge> edges;
  bool unique{true};
};
NestingResult nesting_sequence(const CirclePt& x, int count);

// Determinant +1 matrix with infinity -> a and 0 -> b.
Mat2 edge_map(const TileEdge& e);
// Determinant +1 matrix with 0 -> v0, 1 -> v1, inf -> v2; the triple must be
// a ccw tessellation triangle (v1 a completion of {v0, v2}).
Mat2 triangle_map(const ProjRational& v0, const ProjRational& v1,
                  const ProjRational& v2);
// The rotation v0 -> v1 -> v2 -> v0 fixing the triangle.
Mat2 ccw_rotation(const ProjRational& v0, const ProjRational& v1,
                  const ProjRational& v2);

// Continued fractions: value of [t0; t1, t2, ...] (t_i >= 1 for i >= 1).
ProjRational cf_point(const std::vector<long>& terms);
// Eventually periodic expansion: prefix then infinitely repeated period.
// The result is the corresponding quadratic point on the circle.
CirclePt cf_point_periodic(const std::vector<long>& prefix,
                           const std::vector<long>& period);

}  // namespace mcq
