#include <doctest.h>

#include <algorithm>
#include <set>

#include "mcq/blockcore.hpp"
#include "mcq/geometry.hpp"
#include "mcq/lp.hpp"
#include "util.hpp"

using namespace mcq;
using testutil::XorShift64;

namespace {

// Independent check that conv(S1) n conv(S2) is exactly the span of the
// shared vertices: maximize the weight that a joint point puts on the
// non-shared vertices of either side; the intersection equals the common
// face iff both optima are zero (or the hulls are disjoint).
bool face_equality_oracle(const std::vector<Vec>& S1, const std::vector<Vec>& S2) {
  size_t d = S1[0].size();
  size_t n1 = S1.size(), n2 = S2.size();
  std::vector<bool> c1(n1, false), c2(n2, false);
  for (size_t i = 0; i < n1; ++i)
    for (size_t j = 0; j < n2; ++j)
      if (S1[i] == S2[j]) c1[i] = c2[j] = true;
  Mat A(d + 2, Vec(n1 + n2, Rational(0)));
  Vec b(d + 2, Rational(0));
  for (size_t r = 0; r < d; ++r) {
    for (size_t i = 0; i < n1; ++i) A[r][i] = S1[i][r];
    for (size_t j = 0; j < n2; ++j) A[r][n1 + j] = -S2[j][r];
  }
  for (size_t i = 0; i < n1; ++i) A[d][i] = 1;
  b[d] = 1;
  for (size_t j = 0; j < n2; ++j) A[d + 1][n1 + j] = 1;
  b[d + 1] = 1;
  for (int side = 0; side < 2; ++side) {
    Vec c(n1 + n2, Rational(0));
    for (size_t i = 0; i < n1; ++i)
      if (side == 0 && !c1[i]) c[i] = 1;
    for (size_t j = 0; j < n2; ++j)
      if (side == 1 && !c2[j]) c[n1 + j] = 1;
    LPResult r = lp_max(A, b, c);
    if (r.status == LPStatus::Infeasible) return true;  // disjoint hulls
    REQUIRE(r.status == LPStatus::Optimal);
    if (sgn(r.value) > 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("standard vertices match the size-2 fixture") {
  ModularBlock blk = build_block(2);
  CHECK(blk.A[0] == Vec{Rational(1), Rational(0), Rational(0), Rational(0)});
  CHECK(blk.A[1] == Vec{Rational(0), Rational(1), Rational(0), Rational(0)});
  CHECK(blk.C[0] == Vec{Rational(0), Rational(0), Rational(1), Rational(0)});
  CHECK(blk.C[1] == Vec{Rational(0), Rational(0), Rational(0), Rational(1)});
  Vec b1 = {make_rational(1, 6), make_rational(2, 6), make_rational(1, 6),
            make_rational(2, 6)};
  Vec b2 = {make_rational(2, 6), make_rational(1, 6), make_rational(2, 6),
            make_rational(1, 6)};
  CHECK(blk.B[0] == b1);
  CHECK(blk.B[1] == b2);

  // Projection to the three alternating-sign functionals separates the
  // vertices the standard way.
  auto proj = [](const Vec& v) {
    auto dotsigns = [&v](int s1, int s2, int s3, int s4) -> Rational {
      return v[0] * s1 + v[1] * s2 + v[2] * s3 + v[3] * s4;
    };
    return Vec{dotsigns(1, 1, -1, -1), dotsigns(1, -1, 1, -1),
               dotsigns(1, -1, -1, 1)};
  };
  CHECK(proj(blk.A[0]) == Vec{Rational(1), Rational(1), Rational(1)});
  CHECK(proj(blk.A[1]) == Vec{Rational(1), Rational(-1), Rational(-1)});
  CHECK(proj(blk.B[0]) ==
        Vec{Rational(0), make_rational(-1, 3), Rational(0)});
  CHECK(proj(blk.B[1]) == Vec{Rational(0), make_rational(1, 3), Rational(0)});
  CHECK(proj(blk.C[0]) == Vec{Rational(-1), Rational(1), Rational(-1)});
  CHECK(proj(blk.C[1]) == Vec{Rational(-1), Rational(-1), Rational(1)});
}

TEST_CASE("piece census") {
  CHECK(build_block(2).good.size() == 8);
  CHECK(build_block(2).core.size() == 6);
  CHECK(build_block(3).good.size() == 26);
  CHECK(build_block(3).core.size() == 24);
  CHECK_THROWS_AS(build_block(1), std::invalid_argument);
}

TEST_CASE("selector keys round trip") {
  Selector s = {PairSel::AB, PairSel::CA, PairSel::BC};
  CHECK(selector_key(s) == "AB.CA.BC");
  CHECK(selector_parse("AB.CA.BC") == s);
  CHECK_THROWS_AS(selector_parse("AB.XX"), std::invalid_argument);
  CHECK(sigma_selector(s) == Selector{PairSel::BC, PairSel::AB, PairSel::CA});
}

TEST_CASE("structural verification passes for sizes 2..5") {
  for (int k = 2; k <= 5; ++k) {
    ModularBlock blk = build_block(k);
    BlockReport rep = verify_block(blk, VerifyLevel::Structural);
    CAPTURE(k);
    CHECK(rep.pass);
  }
}

TEST_CASE("full verification passes for sizes 2 and 3") {
  for (int k = 2; k <= 3; ++k) {
    ModularBlock blk = build_block(k);
    BlockReport rep = verify_block(blk, VerifyLevel::Full);
    CAPTURE(k);
    for (const auto& c : rep.checks) {
      CAPTURE(c.name);
      CAPTURE(c.detail);
      CHECK(c.pass);
    }
    CHECK(rep.pass);
    CHECK(rep.to_json().find("\"pass\"") != std::string::npos);
  }
}

TEST_CASE("perturbed vertex data fails verification") {
  ModularBlock blk = build_block(2);
  // slide B_1 inside the hyperplane: sum stays 1, geometry breaks
  blk.B[0][0] += make_rational(1, 100);
  blk.B[0][1] -= make_rational(1, 100);
  BlockReport rep = verify_block(blk, VerifyLevel::Structural);
  CHECK(!rep.pass);

  ModularBlock blk2 = build_block(2);
  blk2.B[1][3] += make_rational(1, 1000);  // off the hyperplane
  CHECK(!verify_block(blk2, VerifyLevel::Structural).pass);

  // a swap that keeps determinants but breaks the rotation orbit shape is
  // still caught by the full level's face checks
  ModularBlock blk3 = build_block(2);
  std::swap(blk3.B[0], blk3.B[1]);
  CHECK(!verify_block(blk3, VerifyLevel::Full).pass);
}

TEST_CASE("face intersections agree with the direct oracle") {
  ModularBlock blk = build_block(2);
  std::vector<std::vector<Vec>> simps;
  std::vector<std::vector<int>> ids;
  for (const auto& s : blk.good) {
    simps.push_back(blk.simplex(s));
    ids.push_back(blk.simplex_vertex_ids(s));
  }
  for (size_t a = 0; a < blk.good.size(); ++a) {
    auto inv = vertex_matrix_inverse(simps[a]);
    REQUIRE(inv);
    for (size_t b = 0; b < blk.good.size(); ++b) {
      if (a == b) continue;
      std::vector<std::pair<int, int>> common;
      for (size_t i = 0; i < ids[a].size(); ++i)
        for (size_t j = 0; j < ids[b].size(); ++j)
          if (ids[a][i] == ids[b][j])
            common.push_back({static_cast<int>(i), static_cast<int>(j)});
      bool fast = meets_exactly_in_common_face(simps[a], *inv, simps[b], common);
      bool slow = face_equality_oracle(simps[a], simps[b]);
      CAPTURE(selector_key(blk.good[a]));
      CAPTURE(selector_key(blk.good[b]));
      CHECK(fast == slow);
      CHECK(fast);  // the block itself satisfies the property
    }
  }

  // a pair that genuinely overlaps beyond its common face: the ambient
  // simplex against any core piece
  std::vector<Vec> outer = blk.simplex(selector_all(PairSel::CA, 2));
  std::vector<int> outer_ids = blk.simplex_vertex_ids(selector_all(PairSel::CA, 2));
  auto inv = vertex_matrix_inverse(outer);
  REQUIRE(inv);
  std::vector<int> core_ids = blk.simplex_vertex_ids(blk.core[0]);
  std::vector<std::pair<int, int>> common;
  for (size_t i = 0; i < outer_ids.size(); ++i)
    for (size_t j = 0; j < core_ids.size(); ++j)
      if (outer_ids[i] == core_ids[j])
        common.push_back({static_cast<int>(i), static_cast<int>(j)});
  std::vector<Vec> core0 = blk.simplex(blk.core[0]);
  CHECK(!meets_exactly_in_common_face(outer, *inv, core0, common));
  CHECK(!face_equality_oracle(outer, core0));
}

TEST_CASE("rotation permutes core pieces in three-cycles") {
  for (int k = 2; k <= 4; ++k) {
    ModularBlock blk = build_block(k);
    auto orbits = sigma_core_orbits(blk);
    CHECK(orbits.size() == blk.core.size() / 3);
    std::set<int> seen;
    for (const auto& o : orbits)
      for (int i : o) seen.insert(i);
    CHECK(seen.size() == blk.core.size());
  }
}

TEST_CASE("rotation is an exact PL map of order three") {
  XorShift64 rng(53);
  for (int k = 2; k <= 3; ++k) {
    ModularBlock blk = build_block(k);
    for (int trial = 0; trial < 25; ++trial) {
      // random point of a random core piece
      size_t ci = rng.below(blk.core.size());
      auto verts = blk.simplex(blk.core[ci]);
      Vec w(verts.size());
      Rational tot = 0;
      for (auto& x : w) {
        x = Rational(rng.range(0, 8));
        tot += x;
      }
      if (sgn(tot) == 0) continue;
      Vec p(blk.dim(), Rational(0));
      for (size_t i = 0; i < verts.size(); ++i)
        p = vec_add(p, vec_scale(w[i] / tot, verts[i]));
      Vec q1 = sigma_apply(blk, p);
      Vec q2 = sigma_apply(blk, q1);
      Vec q3 = sigma_apply(blk, q2);
      CHECK(q3 == p);
    }
    // interior of an inner simplex is outside the domain
    Vec inner_bc = barycenter(blk.simplex(selector_all(PairSel::AB, blk.k)));
    CHECK_THROWS_AS(sigma_apply(blk, inner_bc), std::domain_error);
  }
}

TEST_CASE("rotation maps each core piece onto its successor") {
  ModularBlock blk = build_block(3);
  for (size_t ci = 0; ci < blk.core.size(); ++ci) {
    Vec bc = barycenter(blk.simplex(blk.core[ci]));
    Vec image = sigma_apply(blk, bc);
    Selector target = sigma_selector(blk.core[ci]);
    CHECK(simplex_contains_point(blk.simplex(target), image));
  }
}

TEST_CASE("size-2 adjacency is a single six-cycle") {
  ModularBlock blk = build_block(2);
  auto adj = core_adjacency(blk);
  REQUIRE(adj.size() == 6);
  for (const auto& nbrs : adj) CHECK(nbrs.size() == 2);
  // trace the cycle from 0
  std::vector<int> cycle = {0, adj[0][0]};
  while (true) {
    int cur = cycle.back(), prev = cycle[cycle.size() - 2];
    int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
    if (nxt == 0) break;
    cycle.push_back(nxt);
  }
  CHECK(cycle.size() == 6);
  // lexicographic core order: AB.BC, AB.CA, BC.AB, BC.CA, CA.AB, CA.BC
  CHECK(selector_key(blk.core[0]) == "AB.BC");
  CHECK(selector_key(blk.core[3]) == "BC.CA");
  CHECK(adj[0] == std::vector<int>{1, 5});
  CHECK(adj[3] == std::vector<int>{1, 2});
}

TEST_CASE("locate_in_core finds interior points uniquely") {
  ModularBlock blk = build_block(2);
  for (size_t ci = 0; ci < blk.core.size(); ++ci) {
    Vec bc = barycenter(blk.simplex(blk.core[ci]));
    auto loc = locate_in_core(blk, bc);
    REQUIRE(loc);
    CHECK(loc->core_index == static_cast<int>(ci));
  }
  CHECK(!locate_in_core(blk, barycenter(blk.simplex(selector_all(PairSel::BC, 2)))));
}

TEST_CASE("core volume identity at size 2") {
  ModularBlock blk = build_block(2);
  Rational sum = 0;
  for (const auto& s : blk.core) sum += simplex_det_abs(blk.simplex(s));
  CHECK(sum == make_rational(5, 6));  // 1 - 2 * (3/36)
}
