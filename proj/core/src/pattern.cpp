#include "mcq/pattern.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

namespace mcq {

namespace {

long chain_cap() {
  if (const char* s = std::getenv("MCQ_MAX_CHAIN_STEPS")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end != s && v > 0) return v;
  }
  return 100000;
}

struct OrientedEdge {
  ProjRational u, v;  // walk heads into the open ccw arc u -> v
  TileEdge as_edge() const { return TileEdge{u, v, std::string()}; }
};

bool in_arc(const CirclePt& x, const ProjRational& a, const ProjRational& b) {
  return in_open_arc(x, CirclePt(a), CirclePt(b));
}

// First tiling edge crossed by the seed axis, oriented so the attracting
// endpoint lies in the open arc u -> v.  Either the axis separates two of
// the base vertices, or both its endpoints sit beyond one base edge and we
// descend that side until they split.
OrientedEdge chain_start(const Geodesic& seed, long cap) {
  CirclePt att(seed.att), rep(seed.rep);
  for (const TileEdge& e : base_edges()) {
    bool shared = false;
    if (interleaved(att, rep, CirclePt(e.a), CirclePt(e.b), &shared))
      return in_arc(att, e.a, e.b) ? OrientedEdge{e.a, e.b}
                                   : OrientedEdge{e.b, e.a};
  }
  TileEdge cur;
  bool found = false;
  for (const TileEdge& e : base_edges())
    if (in_arc(att, e.a, e.b) && in_arc(rep, e.a, e.b)) {
      cur = e;
      found = true;
      break;
    }
  if (!found) throw std::logic_error("axis endpoints on no common base arc");
  for (long step = 0; step < cap; ++step) {
    ProjRational w = far_completion(cur);
    bool aw_att = in_arc(att, cur.a, w);
    bool aw_rep = in_arc(rep, cur.a, w);
    if (aw_att && aw_rep)
      cur = TileEdge{cur.a, w, std::string()};
    else if (!aw_att && !aw_rep)
      cur = TileEdge{w, cur.b, std::string()};
    else
      return aw_att ? OrientedEdge{cur.a, w} : OrientedEdge{w, cur.b};
  }
  throw IncompleteEnumeration("axis descent exceeded MCQ_MAX_CHAIN_STEPS");
}

}  // namespace

std::string Geodesic::key() const {
  std::string x = att.str(), y = rep.str();
  if (y < x) std::swap(x, y);
  return x + "~" + y;
}

bool Geodesic::same_axis(const Geodesic& o) const {
  return (att == o.att && rep == o.rep) || (att == o.rep && rep == o.att);
}

Geodesic axis_of(const Mat2& m, const std::string& word) {
  Integer tr = m.trace();
  if (iabs(tr) <= 2)
    throw std::invalid_argument("holonomy is not hyperbolic: " +
                                (word.empty() ? m.str() : word));
  // det 1 and c == 0 forces a = d = +-1, trace +-2, so c != 0 here
  if (sgn(m.c) == 0) throw std::logic_error("hyperbolic matrix with c == 0");
  Integer disc = tr * tr - 4;
  Integer ad = m.a - m.d;
  Geodesic g;
  // eigenvalue of larger modulus is (tr + sgn(tr) sqrt(disc)) / 2; its
  // eigenvector gives the attracting fixed point (a - d + sgn(tr) sqrt(disc)) / 2c
  g.att = QuadSurd(ad, Integer(sgn(tr)), 2 * m.c, disc);
  g.rep = QuadSurd(ad, Integer(-sgn(tr)), 2 * m.c, disc);
  if (g.att.is_rational())
    throw std::logic_error("hyperbolic axis endpoint came out rational");
  g.holonomy = m;
  g.holonomy.psl_normalize();
  g.word = word.empty() ? matrix_to_st_word(g.holonomy) : word;
  return g;
}

Geodesic geodesic_from_word(const std::string& word) {
  return axis_of(word_to_matrix(word), word);
}

Geodesic transport(const Mat2& g, const Geodesic& gamma) {
  Geodesic out;
  out.att = mobius(g, gamma.att);
  out.rep = mobius(g, gamma.rep);
  out.holonomy = g * gamma.holonomy * g.inverse();
  out.holonomy.psl_normalize();
  out.word = matrix_to_st_word(out.holonomy);
  return out;
}

bool crosses(const Geodesic& g, const TileEdge& e, bool* shared) {
  return interleaved(CirclePt(g.att), CirclePt(g.rep), CirclePt(e.a),
                     CirclePt(e.b), shared);
}

Pattern pattern_from_words(const std::vector<std::string>& words) {
  Pattern P;
  for (const std::string& w : words) {
    Geodesic g = geodesic_from_word(w);
    for (const Geodesic& have : P.seeds)
      if (have.same_axis(g))
        throw std::invalid_argument("duplicate seed axis: " + w);
    P.seeds.push_back(std::move(g));
  }
  return P;
}

std::vector<Geodesic> orbit_enumerate(const Geodesic& seed, const TileEdge& e,
                                      ChainCertificate* cert) {
  long cap = chain_cap();
  OrientedEdge start = chain_start(seed, cap);
  CirclePt att(seed.att);

  // the holonomy translates the crossing chain forward; meeting the
  // translate of the start edge closes one period
  ProjRational tu = seed.holonomy.apply(start.u);
  ProjRational tv = seed.holonomy.apply(start.v);

  std::vector<OrientedEdge> chain{start};
  OrientedEdge cur = start;
  while (true) {
    if (static_cast<long>(chain.size()) > cap)
      throw IncompleteEnumeration(
          "crossing chain exceeded MCQ_MAX_CHAIN_STEPS before closing");
    ProjRational w = far_completion(cur.as_edge());
    cur = in_arc(att, cur.u, w) ? OrientedEdge{cur.u, w}
                                : OrientedEdge{w, cur.v};
    if (cur.u == tu && cur.v == tv) break;
    chain.push_back(cur);
  }

  // Any g with g(seed axis) crossing e satisfies g^-1(e) = chain edge up to
  // a holonomy power, and exactly two maps carry a given edge onto e.
  Mat2 qe = edge_map(e);
  std::vector<Geodesic> out;
  std::set<std::string> seen;
  for (const OrientedEdge& ce : chain) {
    Mat2 qi_inv = edge_map(ce.as_edge()).inverse();
    for (int s = 0; s < 2; ++s) {
      Mat2 g = (s == 0) ? qe * qi_inv : qe * Mat2::gen_S() * qi_inv;
      Geodesic cand = transport(g, seed);
      bool shared = false;
      if (!crosses(cand, e, &shared) || shared)
        throw std::logic_error("chain candidate misses the target edge");
      if (seen.insert(cand.key()).second) out.push_back(std::move(cand));
    }
  }
  if (cert) {
    cert->period = static_cast<int>(chain.size());
    cert->candidates = 2 * static_cast<int>(chain.size());
    cert->converged = true;
  }
  return out;
}

GammaE gamma_e(const Pattern& P, const TileEdge& e) {
  GammaE res;
  res.edge = e;
  for (const Geodesic& seed : P.seeds) {
    ChainCertificate cert;
    std::vector<Geodesic> part = orbit_enumerate(seed, e, &cert);
    res.certs.push_back(cert);
    for (Geodesic& g : part) {
      for (const Geodesic& have : res.geodesics) {
        if (have.same_axis(g))
          throw std::invalid_argument(
              "pattern seeds generate overlapping orbits");
        if (have.att == g.att || have.att == g.rep || have.rep == g.att ||
            have.rep == g.rep)
          throw std::runtime_error("pattern geodesics share an endpoint");
      }
      res.geodesics.push_back(std::move(g));
    }
  }

  // order by exact crossing position: transport e onto the standard edge
  // (a -> inf, b -> 0); a geodesic with transported endpoints u' < 0 < v'
  // meets the vertical axis at height sqrt(-u'v')
  Mat2 minv = edge_map(e).inverse();
  struct Entry {
    Geodesic g;
    QuadSurd pos, up;
  };
  std::vector<Entry> entries;
  entries.reserve(res.geodesics.size());
  for (Geodesic& g : res.geodesics) {
    QuadSurd up = mobius(minv, g.att);
    QuadSurd vp = mobius(minv, g.rep);
    QuadSurd pos = -(up.mul_same_field(vp));
    if (cmp(pos, Rational(0)) <= 0)
      throw std::logic_error("crossing position must be positive");
    entries.push_back(Entry{std::move(g), std::move(pos), std::move(up)});
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& x, const Entry& y) {
              int c = cmp(x.pos, y.pos);
              if (c != 0) return c < 0;
              c = cmp(x.up, y.up);
              if (c != 0) return c < 0;
              return x.g.key() < y.g.key();
            });
  res.geodesics.clear();
  for (Entry& en : entries) res.geodesics.push_back(std::move(en.g));

  if (res.geodesics.size() % 2 != 0)
    throw std::runtime_error("odd crossing count " +
                             std::to_string(res.geodesics.size()) +
                             " at edge " + e.key());
  return res;
}

int pattern_order(const Pattern& P) { return gamma_e(P, base_edges()[0]).n(); }

std::string tau_object_key(const TauObject& o) {
  if (std::holds_alternative<ProjRational>(o))
    return "v:" + std::get<ProjRational>(o).str();
  return "g:" + std::get<Geodesic>(o).key();
}

TauObject tau_transport(const Mat2& g, const TauObject& o) {
  if (std::holds_alternative<ProjRational>(o))
    return TauObject(g.apply(std::get<ProjRational>(o)));
  return TauObject(transport(g, std::get<Geodesic>(o)));
}

GammaTau gamma_tau(const Pattern& P, const ProjRational& v0,
                   const ProjRational& v1, const ProjRational& v2) {
  GammaTau res;
  res.verts = {v0, v1, v2};
  res.rotation = ccw_rotation(v0, v1, v2);  // validates the triple

  std::array<TileEdge, 3> edges{TileEdge{v0, v1, std::string()},
                                TileEdge{v1, v2, std::string()},
                                TileEdge{v2, v0, std::string()}};
  std::map<std::string, Geodesic> geos;
  int n = -1;
  for (const TileEdge& e : edges) {
    GammaE ge = gamma_e(P, e);
    if (n < 0) n = ge.n();
    if (ge.n() != n)
      throw std::runtime_error("edge crossing counts disagree on a triangle");
    for (Geodesic& g : ge.geodesics) geos.emplace(g.key(), std::move(g));
  }
  for (const ProjRational& v : res.verts) res.objects.emplace_back(v);
  for (auto& kv : geos) res.objects.emplace_back(std::move(kv.second));

  int k = (n + 1) / 2;
  if (static_cast<int>(res.objects.size()) != 3 * k)
    throw std::runtime_error("triangle crossing set has " +
                             std::to_string(res.objects.size()) +
                             " objects, expected " + std::to_string(3 * k));

  std::map<std::string, int> index;
  int m = static_cast<int>(res.objects.size());
  for (int i = 0; i < m; ++i) index[tau_object_key(res.objects[i])] = i;
  std::vector<int> next(m, -1);
  for (int i = 0; i < m; ++i) {
    TauObject img = tau_transport(res.rotation, res.objects[i]);
    auto it = index.find(tau_object_key(img));
    if (it == index.end())
      throw std::logic_error("rotation does not permute the crossing set");
    next[i] = it->second;
  }
  std::vector<char> used(m, 0);
  for (int i = 0; i < m; ++i) {
    if (used[i]) continue;
    int j = next[i], l = next[j];
    if (j == i || l == i || l == j || next[l] != i)
      throw std::logic_error("rotation orbit is not a 3-cycle");
    res.orbits.push_back({i, j, l});
    used[i] = used[j] = used[l] = 1;
  }
  return res;
}

int abstract_simplex_count(const Pattern& P, const ProjRational& v0,
                           const ProjRational& v1, const ProjRational& v2) {
  GammaTau gt = gamma_tau(P, v0, v1, v2);
  int m = static_cast<int>(gt.objects.size());
  std::map<std::string, int> index;
  for (int i = 0; i < m; ++i) index[tau_object_key(gt.objects[i])] = i;

  // Only the involutions of the triangle's own edges can stabilize a
  // 2k-subset of its crossing set: an order-2 element is the half-turn
  // about some edge midpoint, and a half-turn about any other edge moves
  // the crossing set almost entirely off itself.
  std::array<std::array<ProjRational, 2>, 3> eps{
      {{gt.verts[0], gt.verts[1]},
       {gt.verts[1], gt.verts[2]},
       {gt.verts[2], gt.verts[0]}}};
  std::vector<std::vector<int>> inv_img;
  for (const auto& ep : eps) {
    Mat2 q = edge_map(TileEdge{ep[0], ep[1], std::string()});
    Mat2 iota = q * Mat2::gen_S() * q.inverse();
    if (!(iota * iota).is_identity_psl())
      throw std::logic_error("edge involution is not order 2");
    std::vector<int> img(m, -1);
    for (int i = 0; i < m; ++i) {
      TauObject t = tau_transport(iota, gt.objects[i]);
      auto it = index.find(tau_object_key(t));
      if (it != index.end()) img[i] = it->second;
    }
    inv_img.push_back(std::move(img));
  }

  // 2k-subsets with no full rotation orbit = drop one member per orbit
  int k = gt.k();
  int count = 0;
  std::vector<int> drop(k, 0);
  std::vector<char> in_set(m, 0);
  while (true) {
    std::fill(in_set.begin(), in_set.end(), 0);
    for (int o = 0; o < k; ++o)
      for (int j = 0; j < 3; ++j)
        if (j != drop[o]) in_set[gt.orbits[o][j]] = 1;
    bool stabilized = false;
    for (const auto& img : inv_img) {
      bool closed = true;
      for (int i = 0; i < m && closed; ++i)
        if (in_set[i] && (img[i] < 0 || !in_set[img[i]])) closed = false;
      if (closed) {
        stabilized = true;
        break;
      }
    }
    if (!stabilized) ++count;
    int o = 0;
    while (o < k && drop[o] == 2) drop[o++] = 0;
    if (o == k) break;
    ++drop[o];
  }
  return count;
}

}  // namespace mcq
