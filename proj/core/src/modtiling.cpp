#include "mcq/modtiling.hpp"

#include <stdexcept>

#include "mcq/quadsurd.hpp"

namespace mcq {

std::array<ProjRational, 3> base_triangle() {
  return {ProjRational(0, 1), ProjRational(1, 1), ProjRational::infinity()};
}

std::array<TileEdge, 3> base_edges() {
  return {TileEdge{ProjRational(0, 1), ProjRational(1, 1), "e0"},
          TileEdge{ProjRational(1, 1), ProjRational::infinity(), "e1"},
          TileEdge{ProjRational::infinity(), ProjRational(0, 1), "e2"}};
}

std::array<ProjRational, 2> edge_completions(const TileEdge& e) {
  return {ProjRational(e.a.p + e.b.p, e.a.q + e.b.q),
          ProjRational(e.a.p - e.b.p, e.a.q - e.b.q)};
}

ProjRational far_completion(const TileEdge& e) {
  auto w = edge_completions(e);
  bool in0 = in_open_arc(CirclePt(w[0]), CirclePt(e.a), CirclePt(e.b));
  bool in1 = in_open_arc(CirclePt(w[1]), CirclePt(e.a), CirclePt(e.b));
  if (in0 == in1) throw std::logic_error("completions straddle badly: " + e.key());
  return in0 ? w[0] : w[1];
}

std::array<TileEdge, 2> child_edges(const TileEdge& e) {
  ProjRational w = far_completion(e);
  return {TileEdge{e.a, w, e.addr + "0"}, TileEdge{w, e.b, e.addr + "1"}};
}

ArcRelation arc_relation(const TileEdge& e1, const TileEdge& e2) {
  CirclePt a1 = e1.a, b1 = e1.b, a2 = e2.a, b2 = e2.b;
  bool same_pair = (circle_eq(a1, a2) && circle_eq(b1, b2));
  bool swapped_pair = (circle_eq(a1, b2) && circle_eq(b1, a2));
  if (same_pair) return ArcRelation::Equal;
  if (swapped_pair) return ArcRelation::Complement;
  bool shared = false;
  if (interleaved(a1, b1, a2, b2, &shared)) return ArcRelation::Crossing;
  bool one_in_two = in_closed_arc(a1, a2, b2) && in_closed_arc(b1, a2, b2);
  bool two_in_one = in_closed_arc(a2, a1, b1) && in_closed_arc(b2, a1, b1);
  // Partial overlap sharing one endpoint lands here; never for tessellation
  // edges, but the classifier accepts arbitrary arcs.
  if (one_in_two && two_in_one) return ArcRelation::Crossing;
  if (one_in_two) return ArcRelation::Nested12;
  if (two_in_one) return ArcRelation::Nested21;
  return ArcRelation::DisjointInteriors;
}

Tiling::Tiling() {
  auto base = base_edges();
  levels_.push_back({base[0], base[1], base[2]});
}

const std::vector<TileEdge>& Tiling::level(int m) {
  while (built_depth() < m) {
    const auto& prev = levels_.back();
    std::vector<TileEdge> next;
    next.reserve(prev.size() * 2);
    for (const auto& e : prev) {
      auto kids = child_edges(e);
      next.push_back(kids[0]);
      next.push_back(kids[1]);
    }
    levels_.push_back(std::move(next));
  }
  return levels_[m];
}

NestingResult nesting_sequence(const CirclePt& x, int count) {
  NestingResult res;
  if (count <= 0) return res;
  TileEdge cur;
  bool found = false;
  for (const auto& e : base_edges()) {
    if (in_open_arc(x, CirclePt(e.a), CirclePt(e.b))) {
      cur = e;
      found = true;
      break;
    }
  }
  if (!found) {
    // x is a base vertex: take the arc that ends at x.
    res.unique = false;
    for (const auto& e : base_edges())
      if (circle_eq(x, CirclePt(e.b))) {
        cur = e;
        found = true;
        break;
      }
    if (!found) throw std::logic_error("point on no base arc and no base vertex");
  }
  res.edges.push_back(cur);
  while (static_cast<int>(res.edges.size()) < count) {
    ProjRational w = far_completion(cur);
    auto kids = child_edges(cur);
    if (circle_eq(x, CirclePt(w))) {
      res.unique = false;  // fresh vertex hit
      cur = kids[0];       // arc ending at x
    } else if (circle_eq(x, CirclePt(cur.b))) {
      cur = kids[1];  // already converging onto x from below
    } else if (in_open_arc(x, CirclePt(kids[0].a), CirclePt(kids[0].b))) {
      cur = kids[0];
    } else {
      if (!in_open_arc(x, CirclePt(kids[1].a), CirclePt(kids[1].b)))
        throw std::logic_error("nesting descent lost the target");
      cur = kids[1];
    }
    res.edges.push_back(cur);
  }
  return res;
}

Mat2 edge_map(const TileEdge& e) {
  // columns: image of infinity = a, image of 0 = b
  Mat2 m(e.a.p, e.b.p, e.a.q, e.b.q);
  if (m.det() == 1) return m;
  Mat2 m2(e.a.p, -e.b.p, e.a.q, -e.b.q);
  if (m2.det() == 1) return m2;
  throw std::logic_error("edge endpoints not unimodular: " + e.key());
}

Mat2 triangle_map(const ProjRational& v0, const ProjRational& v1,
                  const ProjRational& v2) {
  for (int c1 : {1, -1}) {
    for (int c2 : {1, -1}) {
      Mat2 m(c1 * v2.p, c2 * v0.p, c1 * v2.q, c2 * v0.q);
      if (m.det() != 1) continue;
      if (m.apply(ProjRational(1, 1)) == v1) return m;
    }
  }
  throw std::invalid_argument("not a ccw tessellation triangle");
}

Mat2 ccw_rotation(const ProjRational& v0, const ProjRational& v1,
                  const ProjRational& v2) {
  Mat2 m = triangle_map(v0, v1, v2);
  return m * Mat2::gen_U() * m.inverse();
}

ProjRational cf_point(const std::vector<long>& terms) {
  if (terms.empty()) throw std::invalid_argument("empty continued fraction");
  // [t0; t1, ..., tn] via the matrix product of [[t_i, 1], [1, 0]]
  Mat2 m = Mat2::identity();
  for (size_t i = 0; i < terms.size(); ++i) {
    if (i > 0 && terms[i] < 1)
      throw std::invalid_argument("continued fraction terms must be >= 1");
    m = m * Mat2(Integer(terms[i]), 1, 1, 0);
  }
  return m.apply(ProjRational::infinity());
}

CirclePt cf_point_periodic(const std::vector<long>& prefix,
                           const std::vector<long>& period) {
  if (period.empty()) return CirclePt(cf_point(prefix));
  Mat2 per = Mat2::identity();
  for (long t : period) {
    if (t < 1) throw std::invalid_argument("period terms must be >= 1");
    per = per * Mat2(Integer(t), 1, 1, 0);
  }
  // Fixed point of the period map: c y^2 + (d - a) y - b = 0, positive root
  // (a purely periodic expansion with terms >= 1 exceeds 1).
  Integer A = per.c;
  Integer B = per.d - per.a;
  Integer C = -per.b;
  if (sgn(A) == 0) throw std::logic_error("degenerate period map");
  Integer disc = B * B - 4 * A * C;
  QuadSurd y(-B, Integer(1), 2 * A, disc);  // (-B + sqrt(disc)) / (2A), A > 0
  if (y.is_rational()) throw std::logic_error("periodic expansion gave a rational");
  Mat2 pre = Mat2::identity();
  for (size_t i = 0; i < prefix.size(); ++i) {
    if (i > 0 && prefix[i] < 1)
      throw std::invalid_argument("continued fraction terms must be >= 1");
    pre = pre * Mat2(Integer(prefix[i]), 1, 1, 0);
  }
  return CirclePt(mobius(pre, y));
}

}  // namespace mcq
