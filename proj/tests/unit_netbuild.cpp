#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mcq/netbuild.hpp"
#include "util.hpp"

using namespace mcq;

namespace {

ProjRational pr(long p, long q = 1) { return ProjRational(p, q); }

std::string gkey(const QuadSurd& x, const QuadSurd& y) {
  std::string a = x.str(), b = y.str();
  if (b < a) std::swap(a, b);
  return "g:" + a + "~" + b;
}

// Golden-pattern geodesic labels around the base triangle, as surd pairs.
std::string key_rl() { return gkey(QuadSurd(1, 1, 2, 5), QuadSurd(1, -1, 2, 5)); }
std::string key_lr() { return gkey(QuadSurd(-1, 1, 2, 5), QuadSurd(-1, -1, 2, 5)); }
std::string key_g3() { return gkey(QuadSurd(3, 1, 2, 5), QuadSurd(3, -1, 2, 5)); }
std::string key_g5() { return gkey(QuadSurd(5, 1, 2, 5), QuadSurd(5, -1, 2, 5)); }

const Network& golden(int depth) {
  static std::map<int, Network> cache;
  auto it = cache.find(depth);
  if (it == cache.end())
    it = cache.emplace(depth, build_network(pattern_from_words({"RL"}), depth)).first;
  return it->second;
}

Vec mix(const std::vector<Vec>& verts) {  // interior point with distinct weights
  Rational total(0);
  Vec p(verts[0].size(), Rational(0));
  for (size_t i = 0; i < verts.size(); ++i) {
    Rational w(static_cast<long>(i + 1));
    p = vec_add(p, vec_scale(w, verts[i]));
    total += w;
  }
  return vec_scale(make_rational(1) / total, p);
}

}  // namespace

TEST_CASE("network growth and base labelling") {
  for (int d = 0; d <= 3; ++d) {
    const Network& N = golden(d);
    int expect_blocks = 1 + 3 * ((1 << d) - 1);
    CHECK(N.k == 2);
    CHECK(static_cast<int>(N.blocks.size()) == expect_blocks);
    CHECK(static_cast<int>(N.entries.size()) == 3 * ((1 << (d + 1)) - 1));
    CHECK(static_cast<int>(N.frontier.size()) == 3 * (1 << d));
    CHECK(static_cast<int>(N.cloud.size()) == 6 * (1 << d));
  }

  const Network& N = golden(2);
  const BlockInstance& base = N.blocks[0];
  CHECK(base.addr == "t+");
  CHECK(base.level == 0);
  CHECK(base.chart == 0);
  // the plugged base edge is (0,1), so the labels missing it take the B slots
  std::vector<std::string> expect{"v:1",   key_g3(), "v:inf",
                                  key_rl(), "v:0",    key_lr()};
  REQUIRE(base.label_keys.size() == 6);
  for (int id = 0; id < 6; ++id) CHECK(base.label_keys[id] == expect[id]);

  // labelling intertwines the triangle rotation with the block rotation
  for (int id = 0; id < 6; ++id)
    CHECK(tau_object_key(tau_transport(Mat2::gen_U(), base.label_of[id])) ==
          base.label_keys[sigma_vertex(2, id)]);

  auto e = base_edges();
  const PsiEntry& E0 = psi(N, e[0]);
  CHECK(E0.chart == 1);
  CHECK(E0.level == 0);
  CHECK(E0.verts == N.model.simplex(selector_all(PairSel::CA, 2)));
  const PsiEntry& E1 = psi(N, e[1]);
  CHECK(E1.chart == 0);
  CHECK(E1.verts == N.model.simplex(selector_all(PairSel::AB, 2)));
  std::set<std::string> l1(E1.labels.begin(), E1.labels.end());
  CHECK(l1 == std::set<std::string>{"v:1", "v:inf", key_g3(), key_rl()});
  const PsiEntry& E2 = psi(N, e[2]);
  CHECK(E2.chart == 0);
  CHECK(E2.verts == N.model.simplex(selector_all(PairSel::BC, 2)));

  CHECK_THROWS_AS(build_network(Pattern{}, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_network(pattern_from_words({"RL"}), -1), std::invalid_argument);
}

TEST_CASE("second generation block matches the hand-built placement") {
  // Oracle, built before looking at the network: the hole across (1, inf)
  // is the base block's A u B simplex; the new block as derived by hand
  // aligns its A vertices with {1, axis of RL} and its C vertices with
  // {inf, axis of LLRR-type third orbit element}, which forces the columns
  // below.  Its first interior vertex lands at (11,16,5,4)/36.
  Vec a1{1, 0, 0, 0}, a2{0, 1, 0, 0};
  Vec b1{make_rational(1, 6), make_rational(2, 6), make_rational(1, 6), make_rational(2, 6)};
  Vec b2{make_rational(2, 6), make_rational(1, 6), make_rational(2, 6), make_rational(1, 6)};
  std::vector<Vec> cols{a1, b2, b1, a2};  // images of A1, A2, C1, C2
  Vec expect_b1(4, Rational(0));         // image of the model vertex B1
  for (int i = 0; i < 4; ++i) expect_b1 = vec_add(expect_b1, vec_scale(b1[i], cols[i]));
  Vec hand{make_rational(11, 36), make_rational(4, 9), make_rational(5, 36),
           make_rational(1, 9)};
  REQUIRE(expect_b1 == hand);

  const Network& N = golden(2);
  REQUIRE(N.block_by_addr.count("e1"));
  const BlockInstance& b = N.blocks.at(N.block_by_addr.at("e1"));
  CHECK(b.level == 1);
  CHECK(b.chart == 0);
  CHECK(b.tri[0] == pr(1));
  CHECK(b.tri[1] == pr(2));
  CHECK(b.tri[2].is_infinity());
  std::vector<std::string> expect_labels{"v:1",   key_rl(), "v:2",
                                         key_g5(), "v:inf",  key_g3()};
  for (int id = 0; id < 6; ++id) CHECK(b.label_keys[id] == expect_labels[id]);
  CHECK(mat_vec(b.placement, N.model.vertex(2)) == hand);
  CHECK(chart_point_eq(N.cloud.at("v:2"), ChartPoint{0, hand}));

  // the placement fills the hole exactly, so its volume is the inner fraction
  CHECK(b.det_abs ==
        simplex_det_abs(N.model.simplex(selector_all(PairSel::AB, 2))));
}

TEST_CASE("entry lookups, levels and determinism") {
  const Network& N = golden(2);
  TileEdge deep = base_edges()[0];
  for (int i = 0; i < 3; ++i) deep = child_edges(deep)[0];
  CHECK_THROWS_AS(psi(N, deep), std::out_of_range);

  Rational prev_max(0);
  for (int m = 0; m <= 2; ++m) {
    auto lam = lambda_m(N, m);
    CHECK(static_cast<int>(lam.size()) == 3 * (1 << m));
    Rational mx(0);
    for (size_t i = 0; i < lam.size(); ++i) {
      CHECK(lam[i]->level == m);
      if (i) CHECK(lam[i - 1]->edge.addr < lam[i]->edge.addr);
      if (lam[i]->diam_sq > mx) mx = lam[i]->diam_sq;
    }
    if (m) CHECK(mx <= prev_max);
    prev_max = mx;
  }
  CHECK_THROWS_AS(lambda_m(N, 3), std::out_of_range);
  CHECK_THROWS_AS(lambda_m(N, -1), std::out_of_range);

  // nesting spot check with the geometry primitives directly
  std::map<std::string, const PsiEntry*> by_addr;
  for (const auto& kv : N.entries) by_addr[kv.second.edge.addr] = &kv.second;
  for (const PsiEntry* E : lambda_m(N, 2)) {
    const PsiEntry* parent = by_addr.at(E->edge.addr.substr(0, E->edge.addr.size() - 1));
    CHECK(parent->chart == E->chart);
    CHECK(simplex_contains_simplex(parent->verts, E->verts));
  }

  Network M = build_network(pattern_from_words({"RL"}), 2);
  REQUIRE(M.blocks.size() == N.blocks.size());
  for (size_t i = 0; i < M.blocks.size(); ++i) {
    CHECK(M.blocks[i].addr == N.blocks[i].addr);
    CHECK(M.blocks[i].chart == N.blocks[i].chart);
    CHECK(M.blocks[i].placement == N.blocks[i].placement);
    CHECK(M.blocks[i].label_keys == N.blocks[i].label_keys);
  }
  REQUIRE(M.entries.size() == N.entries.size());
  for (const auto& kv : M.entries) {
    const PsiEntry& E = N.entries.at(kv.first);
    CHECK(kv.second.verts == E.verts);
    CHECK(kv.second.labels == E.labels);
  }
  for (const auto& kv : M.cloud) CHECK(chart_point_eq(kv.second, N.cloud.at(kv.first)));
}

TEST_CASE("limit point approximants") {
  const Network& N = golden(2);
  std::vector<std::pair<std::string, ProjRational>> cusps{
      {"v:0", pr(0)}, {"v:1", pr(1)}, {"v:inf", ProjRational::infinity()}};
  for (const auto& c : cusps) {
    auto r = psi_infinity(N, CirclePt(c.second), 5);
    CHECK(r.exact);
    CHECK_FALSE(r.partial);
    CHECK(r.error_sq == 0);
    CHECK(chart_point_eq(r.point, N.cloud.at(c.first)));
  }
  auto r2 = psi_infinity(N, CirclePt(pr(2)), 0);
  CHECK(r2.exact);
  CHECK(chart_point_eq(r2.point, N.cloud.at("v:2")));

  // a cusp deeper than the built tree falls back to the nested simplex
  REQUIRE_FALSE(N.cloud.count("v:7/2"));
  auto r3 = psi_infinity(N, CirclePt(pr(7, 2)), 2);
  CHECK_FALSE(r3.exact);
  CHECK_FALSE(r3.partial);
  CHECK(r3.depth_used == 2);
  CHECK(r3.error_sq > 0);
  auto r4 = psi_infinity(N, CirclePt(pr(7, 2)), 9);
  CHECK(r4.partial);
  CHECK(r4.depth_used == 2);

  // both endpoints of a pattern geodesic stay next to its labelled vertex
  ChartPoint vert = N.cloud.at(key_rl());
  for (const QuadSurd& x : {QuadSurd(1, 1, 2, 5), QuadSurd(1, -1, 2, 5)}) {
    NestingResult ns = nesting_sequence(CirclePt(x), 3);
    for (int m = 0; m <= 2; ++m) {
      const PsiEntry& E = N.entries.at(ns.edges[m].key());
      CHECK(std::count(E.labels.begin(), E.labels.end(), key_rl()) == 1);
      auto a = psi_infinity(N, CirclePt(x), m);
      REQUIRE(a.point.chart == vert.chart);
      CHECK(squared_distance(a.point.x, vert.x) <= a.error_sq);
    }
  }
  CHECK_THROWS_AS(psi_infinity(N, CirclePt(pr(0)), -1), std::invalid_argument);
}

TEST_CASE("representation evaluation") {
  const Network& N = golden(2);
  auto at = [&](const std::string& label) { return N.cloud.at(label); };

  // labelled vertices move by label
  CHECK(chart_point_eq(rho_apply(N, "R", at("v:0")), at("v:1")));
  CHECK(chart_point_eq(rho_apply(N, "R", at(key_lr())), at(key_rl())));
  CHECK(chart_point_eq(rho_apply(N, "U", at("v:0")), at("v:1")));
  CHECK(chart_point_eq(rho_apply(N, "U", at("v:1")), at("v:inf")));
  CHECK(chart_point_eq(rho_apply(N, "U", at("v:inf")), at("v:0")));

  // the base triangle stabilizer acts as the block rotation
  for (const Selector& sel : N.model.core) {
    Vec p = mix(N.model.simplex(sel));
    ChartPoint out = rho_apply(N, "U", ChartPoint{0, p});
    CHECK(out.chart == 0);
    CHECK(out.x == sigma_apply(N.model, p));
  }

  // order-2 and order-3 relations, on vertices and interior points.  The
  // rotation fixes the base triangle so it never leaves the built range;
  // the involution shifts one subtree a level deeper, so it only gets the
  // samples whose orbits stay inside depth 2.
  std::vector<ChartPoint> samples{at("v:0"), at(key_rl()),
                                  ChartPoint{0, mix(N.model.simplex(N.model.core[0]))}};
  for (const ChartPoint& p : samples) {
    ChartPoint s2 = rho_apply(N, "S", rho_apply(N, "S", p));
    CHECK(chart_point_eq(s2, p));
  }
  const PsiEntry& hole = N.entries.at(N.frontier[0]);
  samples.push_back(ChartPoint{hole.chart, mix(hole.verts)});
  for (const ChartPoint& p : samples) {
    ChartPoint u3 = rho_apply(N, "U", rho_apply(N, "U", rho_apply(N, "U", p)));
    CHECK(chart_point_eq(u3, p));
  }

  // homomorphism on every labelled vertex for short word pairs
  std::vector<std::pair<std::string, std::string>> pairs{
      {"R", "L"}, {"L", "R"}, {"U", "R"}, {"S", "S"}, {"RL", "U"}};
  int applied = 0;
  for (const auto& wp : pairs) {
    for (const auto& kv : N.cloud) {
      try {
        ChartPoint rhs = rho_apply(N, wp.second, kv.second);
        ChartPoint lhs = rho_apply(N, wp.first + wp.second, kv.second);
        CHECK(chart_point_eq(lhs, rho_apply(N, wp.first, rhs)));
        ++applied;
      } catch (const DepthError&) {
      }
    }
  }
  CHECK(applied >= 50);

  // beyond the built depth the piece is undetermined
  Vec inner = mix(N.model.simplex(N.model.core[0]));
  CHECK_THROWS_AS(rho_apply(N, "RRR", ChartPoint{0, inner}), DepthError);
  CHECK_THROWS_AS(rho_apply(N, "rrr", ChartPoint{0, inner}), DepthError);

  RepElement ru = rho_pieces(N, "U");
  CHECK(ru.pieces.size() == N.blocks.size() * N.model.core.size() + N.frontier.size());
  for (const RepPiece& pc : ru.pieces) {
    for (const Vec& v : pc.domain) {
      Vec y = mat_vec(pc.map, v);
      Rational s(0);
      for (const auto& c : y) s += c;
      CHECK(s == 1);
    }
  }
  // pieces agree wherever their domains share vertices
  for (size_t i = 0; i + 1 < ru.pieces.size(); ++i) {
    for (size_t j = i + 1; j < ru.pieces.size(); ++j) {
      const RepPiece &P1 = ru.pieces[i], &P2 = ru.pieces[j];
      for (const Vec& v : P1.domain) {
        bool shared = false;
        for (const Vec& w : P2.domain)
          if (v == w && P1.chart_in == P2.chart_in) shared = true;
        if (!shared) continue;
        CHECK(chart_point_eq(ChartPoint{P1.chart_out, mat_vec(P1.map, v)},
                             ChartPoint{P2.chart_out, mat_vec(P2.map, v)}));
      }
    }
  }
}

TEST_CASE("network audits") {
  NetworkAuditOptions opts;
  opts.minimality_words = 5;
  opts.discontinuity_words = 5;
  NetworkReport rep = verify_network(golden(2), opts);
  for (const NetworkCheck& c : rep.checks) {
    INFO(c.name, ": ", c.detail);
    CHECK(c.pass);
  }
  CHECK(rep.pass);

  Network big = build_network(pattern_from_words({"LLR"}), 1);
  CHECK(big.k == 4);
  CHECK(big.blocks.size() == 4);
  NetworkAuditOptions fast;
  fast.minimality_words = 4;
  fast.discontinuity_words = 4;
  NetworkReport rep2 = verify_network(big, fast);
  for (const NetworkCheck& c : rep2.checks) {
    INFO(c.name, ": ", c.detail);
    CHECK(c.pass);
  }

  Network both = build_network(pattern_from_words({"RL", "LLR"}), 1);
  CHECK(both.k == 5);
  NetworkReport rep3 = verify_network(both, fast);
  for (const NetworkCheck& c : rep3.checks) {
    INFO(c.name, ": ", c.detail);
    CHECK(c.pass);
  }
}
