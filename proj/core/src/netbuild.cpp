#include "mcq/netbuild.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "mcq/lp.hpp"

namespace mcq {

ChartPoint chart_canonical(const ChartPoint& p) {
  if (p.chart != 0) {
    for (const auto& c : p.x)
      if (c == 0) return ChartPoint{0, p.x};
  }
  return p;
}

bool chart_point_eq(const ChartPoint& a, const ChartPoint& b) {
  ChartPoint ca = chart_canonical(a), cb = chart_canonical(b);
  return ca.chart == cb.chart && ca.x == cb.x;
}

std::string chart_point_key(const ChartPoint& p) {
  ChartPoint c = chart_canonical(p);
  return (c.chart == 0 ? "+" : "-") + vec_str(c.x);
}

namespace {

Mat mat_from_cols(const std::vector<Vec>& cols) {
  int n = static_cast<int>(cols.size());
  Mat M(n, Vec(n, Rational(0)));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) M[r][c] = cols[c][r];
  return M;
}

std::vector<Vec> placement_cols(const Mat& M) {
  int n = static_cast<int>(M.size());
  std::vector<Vec> cols(n, Vec(n, Rational(0)));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) cols[c][r] = M[r][c];
  return cols;
}

std::string tri_key(const std::array<ProjRational, 3>& tri) {
  std::array<std::string, 3> s{tri[0].str(), tri[1].str(), tri[2].str()};
  std::sort(s.begin(), s.end());
  return s[0] + "|" + s[1] + "|" + s[2];
}

std::array<ProjRational, 3> tri_image(const Mat2& g,
                                      const std::array<ProjRational, 3>& tri) {
  return {g.apply(tri[0]), g.apply(tri[1]), g.apply(tri[2])};
}

bool touches_edge(const TauObject& o, const TileEdge& e) {
  if (std::holds_alternative<ProjRational>(o)) {
    const auto& v = std::get<ProjRational>(o);
    return v == e.a || v == e.b;
  }
  return crosses(std::get<Geodesic>(o), e);
}

// Within each rotation orbit exactly one object misses the plugged edge;
// that one takes the B slot, its rotation image C, the remaining one A.
// This is the only assignment for which the A u C vertices carry the
// crossing set of the plugged edge while staying rotation-equivariant.
std::vector<TauObject> make_labelling(const GammaTau& gt, const TileEdge& outer) {
  int k = gt.k();
  std::vector<TauObject> label_of(3 * k);
  int j = 0;
  for (const auto& orb : gt.orbits) {
    int miss = -1;
    for (int t = 0; t < 3; ++t) {
      if (!touches_edge(gt.objects[orb[t]], outer)) {
        if (miss >= 0)
          throw std::logic_error("network labelling: two orbit objects miss the plugged edge");
        miss = t;
      }
    }
    if (miss < 0)
      throw std::logic_error("network labelling: no orbit object misses the plugged edge");
    label_of[k + j] = gt.objects[orb[miss]];
    label_of[2 * k + j] = gt.objects[orb[(miss + 1) % 3]];
    label_of[j] = gt.objects[orb[(miss + 2) % 3]];
    ++j;
  }
  return label_of;
}

void fill_label_maps(BlockInstance& b) {
  b.label_keys.clear();
  b.label_index.clear();
  for (size_t id = 0; id < b.label_of.size(); ++id) {
    std::string key = tau_object_key(b.label_of[id]);
    b.label_keys.push_back(key);
    if (!b.label_index.emplace(key, static_cast<int>(id)).second)
      throw std::logic_error("network labelling: duplicate label within a block");
  }
}

void cloud_insert(Network& N, const std::string& label, const TauObject& obj,
                  const ChartPoint& p) {
  ChartPoint c = chart_canonical(p);
  auto it = N.cloud.find(label);
  if (it == N.cloud.end()) {
    N.cloud.emplace(label, c);
    N.objects.emplace(label, obj);
  } else if (!chart_point_eq(it->second, c)) {
    throw std::logic_error("network construction: vertex label relocated: " + label);
  }
}

void register_block(Network& N, BlockInstance&& b) {
  int idx = static_cast<int>(N.blocks.size());
  if (!N.block_by_addr.emplace(b.addr, idx).second)
    throw std::logic_error("network construction: duplicate block address " + b.addr);
  if (!N.block_by_tri.emplace(tri_key(b.tri), idx).second)
    throw std::logic_error("network construction: duplicate block triangle at " + b.addr);
  for (int id = 0; id < 3 * N.k; ++id)
    cloud_insert(N, b.label_keys[id], b.label_of[id],
                 ChartPoint{b.chart, mat_vec(b.placement, N.model.vertex(id))});
  N.blocks.push_back(std::move(b));
}

PsiEntry make_entry(const ModularBlock& model, const BlockInstance& b,
                    const Selector& sel, const TileEdge& edge, int level,
                    int chart_override = -1) {
  PsiEntry E;
  E.edge = edge;
  E.level = level;
  E.chart = chart_override >= 0 ? chart_override : b.chart;
  for (int id : model.simplex_vertex_ids(sel)) {
    E.verts.push_back(mat_vec(b.placement, model.vertex(id)));
    E.objects.push_back(b.label_of[id]);
    E.labels.push_back(b.label_keys[id]);
  }
  E.diam_sq = diameter_sq(E.verts);
  return E;
}

void add_entry(Network& N, PsiEntry&& E) {
  std::string key = E.edge.key();
  for (size_t i = 0; i < E.verts.size(); ++i)
    cloud_insert(N, E.labels[i], E.objects[i], ChartPoint{E.chart, E.verts[i]});
  if (!N.entries.emplace(key, std::move(E)).second)
    throw std::logic_error("network construction: duplicate edge entry " + key);
}

// All reduced words over L, R and their inverses, as matrices with lengths.
void for_reduced_words(int maxlen, const std::function<void(const Mat2&, int)>& fn) {
  std::array<Mat2, 4> G{word_to_matrix("L"), word_to_matrix("R"),
                        word_to_matrix("l"), word_to_matrix("r")};
  std::function<void(const Mat2&, int, int)> rec = [&](const Mat2& g, int last,
                                                       int len) {
    if (len > 0) fn(g, len);
    if (len == maxlen) return;
    for (int i = 0; i < 4; ++i) {
      if (last >= 0 && (i ^ 2) == last) continue;
      rec(g * G[i], i, len + 1);
    }
  };
  rec(Mat2::identity(), -1, 0);
}

int find_label_index(const std::vector<std::string>& labels, const std::string& key) {
  for (size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == key) return static_cast<int>(i);
  return -1;
}

}  // namespace

Network build_network(const Pattern& P, int depth) {
  if (depth < 0) throw std::invalid_argument("build_network: negative depth");
  auto base = base_triangle();
  GammaTau gt0 = gamma_tau(P, base[0], base[1], base[2]);
  int k = gt0.k();
  if (k < 2)
    throw std::invalid_argument(
        "build_network: pattern too small, every triangle needs a crossing geodesic");

  Network N;
  N.pattern = P;
  N.k = k;
  N.depth = depth;
  N.model = build_block(k);

  auto edges0 = base_edges();
  BlockInstance b0;
  b0.addr = "t+";
  b0.level = 0;
  b0.tri = base;
  b0.chart = 0;
  b0.placement = mat_identity(2 * k);
  b0.placement_inv = b0.placement;
  b0.det_abs = 1;
  b0.label_of = make_labelling(gt0, edges0[0]);
  fill_label_maps(b0);
  register_block(N, std::move(b0));

  // The three holes around the base block: across the plugged base edge the
  // hole is the whole minus chart; across the rotated edges the two inner
  // simplices.
  const BlockInstance& bb = N.blocks[0];
  add_entry(N, make_entry(N.model, bb, selector_all(PairSel::CA, k), edges0[0], 0, 1));
  add_entry(N, make_entry(N.model, bb, selector_all(PairSel::AB, k), edges0[1], 0));
  add_entry(N, make_entry(N.model, bb, selector_all(PairSel::BC, k), edges0[2], 0));

  Tiling til;
  for (int lvl = 1; lvl <= depth; ++lvl) {
    for (const TileEdge& e : til.level(lvl - 1)) {
      const PsiEntry& hole = N.entries.at(e.key());
      ProjRational w = far_completion(e);
      GammaTau gt = gamma_tau(P, e.a, w, e.b);
      if (gt.k() != k)
        throw std::logic_error("network construction: crossing census varies at " + e.addr);

      BlockInstance b;
      b.addr = e.addr;
      b.level = lvl;
      b.tri = {e.a, w, e.b};
      b.chart = hole.chart;
      b.label_of = make_labelling(gt, e);
      fill_label_maps(b);

      std::map<std::string, int> hv;
      for (size_t i = 0; i < hole.labels.size(); ++i) hv[hole.labels[i]] = static_cast<int>(i);
      std::vector<Vec> cols(2 * k);
      for (int j = 0; j < k; ++j) {
        auto ia = hv.find(b.label_keys[j]);
        auto ic = hv.find(b.label_keys[2 * k + j]);
        if (ia == hv.end() || ic == hv.end() || hv.count(b.label_keys[k + j]))
          throw std::logic_error("network construction: labelling mismatch at " + e.addr);
        cols[j] = hole.verts[ia->second];
        cols[k + j] = hole.verts[ic->second];
      }
      b.placement = mat_from_cols(cols);
      auto inv = mat_inverse(b.placement);
      if (!inv)
        throw std::logic_error("network construction: degenerate placement at " + e.addr);
      b.placement_inv = *inv;
      b.det_abs = simplex_det_abs(cols);
      register_block(N, std::move(b));

      const BlockInstance& nb = N.blocks.back();
      auto kids = child_edges(e);
      add_entry(N, make_entry(N.model, nb, selector_all(PairSel::AB, k), kids[0], lvl));
      add_entry(N, make_entry(N.model, nb, selector_all(PairSel::BC, k), kids[1], lvl));
    }
  }
  for (const TileEdge& e : til.level(depth)) N.frontier.push_back(e.key());
  return N;
}

const PsiEntry& psi(const Network& N, const TileEdge& e) {
  auto it = N.entries.find(e.key());
  if (it == N.entries.end())
    throw std::out_of_range("psi: edge beyond built depth: " + e.key());
  return it->second;
}

PsiInfinityResult psi_infinity(const Network& N, const CirclePt& x, int m) {
  if (m < 0) throw std::invalid_argument("psi_infinity: negative depth");
  PsiInfinityResult R;
  if (is_cusp(x)) {
    auto it = N.cloud.find("v:" + std::get<ProjRational>(x).str());
    if (it != N.cloud.end()) {
      R.point = it->second;
      R.error_sq = 0;
      R.exact = true;
      R.partial = false;
      R.depth_used = m;
      return R;
    }
  }
  int use = std::min(m, N.depth);
  NestingResult ns = nesting_sequence(x, use + 1);
  const PsiEntry& E = N.entries.at(ns.edges[use].key());
  R.point = chart_canonical(ChartPoint{E.chart, barycenter(E.verts)});
  R.error_sq = E.diam_sq;
  R.exact = false;
  R.partial = use < m;
  R.depth_used = use;
  return R;
}

const std::map<std::string, ChartPoint>& limit_cloud(const Network& N) {
  return N.cloud;
}

std::vector<const PsiEntry*> lambda_m(const Network& N, int m) {
  if (m < 0 || m > N.depth)
    throw std::out_of_range("lambda_m: level beyond built depth");
  std::vector<const PsiEntry*> out;
  for (const auto& kv : N.entries)
    if (kv.second.level == m) out.push_back(&kv.second);
  std::sort(out.begin(), out.end(), [](const PsiEntry* a, const PsiEntry* b) {
    return a->edge.addr < b->edge.addr;
  });
  return out;
}

ChartPoint rho_apply(const Network& N, const std::string& word, const ChartPoint& p) {
  Mat2 g = word_to_matrix(word);
  ChartPoint pc = chart_canonical(p);
  if (static_cast<int>(pc.x.size()) != 2 * N.k)
    throw std::invalid_argument("rho_apply: wrong ambient dimension");
  Rational s(0);
  bool glue = false;
  for (const auto& c : pc.x) {
    if (c < 0) throw std::invalid_argument("rho_apply: point outside chart simplex");
    if (c == 0) glue = true;
    s += c;
  }
  if (s != 1) throw std::invalid_argument("rho_apply: point outside chart simplex");

  // Labelled vertices move by label transport, which can outrun the affine
  // pieces when the image vertex is built but the image block is not.
  for (const auto& kv : N.cloud) {
    if (!chart_point_eq(kv.second, pc)) continue;
    TauObject img = tau_transport(g, N.objects.at(kv.first));
    auto it = N.cloud.find(tau_object_key(img));
    if (it != N.cloud.end()) return it->second;
    break;
  }

  for (const BlockInstance& b : N.blocks) {
    if (b.chart != pc.chart && !glue) continue;
    Vec q = mat_vec(b.placement_inv, pc.x);
    bool inside = true;
    for (const auto& c : q)
      if (c < 0) {
        inside = false;
        break;
      }
    if (!inside) continue;
    auto loc = locate_in_core(N.model, q);
    if (!loc) continue;

    auto bt_it = N.block_by_tri.find(tri_key(tri_image(g, b.tri)));
    if (bt_it == N.block_by_tri.end())
      throw DepthError("rho_apply: image triangle beyond built depth");
    const BlockInstance& bt = N.blocks[bt_it->second];
    std::vector<int> ids = N.model.simplex_vertex_ids(N.model.core[loc->core_index]);
    Vec qq(2 * N.k, Rational(0));
    for (size_t i = 0; i < ids.size(); ++i) {
      std::string key = tau_object_key(tau_transport(g, b.label_of[ids[i]]));
      auto li = bt.label_index.find(key);
      if (li == bt.label_index.end())
        throw std::logic_error("rho_apply: image block lacks label " + key);
      qq = vec_add(qq, vec_scale(loc->lambda[i], N.model.vertex(li->second)));
    }
    return chart_canonical(ChartPoint{bt.chart, mat_vec(bt.placement, qq)});
  }

  for (const std::string& fk : N.frontier) {
    const PsiEntry& E = N.entries.at(fk);
    if (E.chart != pc.chart && !glue) continue;
    auto lam = barycentric(E.verts, pc.x);
    if (!lam) continue;
    bool inside = true;
    for (const auto& c : *lam)
      if (c < 0) {
        inside = false;
        break;
      }
    if (!inside) continue;

    TileEdge ie{g.apply(E.edge.a), g.apply(E.edge.b), ""};
    auto ei = N.entries.find(ie.key());
    if (ei == N.entries.end())
      throw DepthError("rho_apply: image edge beyond built depth");
    const PsiEntry& IE = ei->second;
    Vec out(2 * N.k, Rational(0));
    for (size_t i = 0; i < E.labels.size(); ++i) {
      std::string key = tau_object_key(tau_transport(g, E.objects[i]));
      int j = find_label_index(IE.labels, key);
      if (j < 0) throw std::logic_error("rho_apply: image entry lacks label " + key);
      out = vec_add(out, vec_scale((*lam)[i], IE.verts[j]));
    }
    return chart_canonical(ChartPoint{IE.chart, out});
  }
  throw std::logic_error("rho_apply: point not covered by the built region");
}

RepElement rho_pieces(const Network& N, const std::string& word) {
  Mat2 g = word_to_matrix(word);
  RepElement R;
  R.word = word;
  for (const BlockInstance& b : N.blocks) {
    auto bt_it = N.block_by_tri.find(tri_key(tri_image(g, b.tri)));
    if (bt_it == N.block_by_tri.end()) continue;  // image beyond depth
    const BlockInstance& bt = N.blocks[bt_it->second];
    for (const Selector& sel : N.model.core) {
      std::vector<Vec> dom, img;
      for (int id : N.model.simplex_vertex_ids(sel)) {
        dom.push_back(mat_vec(b.placement, N.model.vertex(id)));
        std::string key = tau_object_key(tau_transport(g, b.label_of[id]));
        auto li = bt.label_index.find(key);
        if (li == bt.label_index.end())
          throw std::logic_error("rho_pieces: image block lacks label " + key);
        img.push_back(mat_vec(bt.placement, N.model.vertex(li->second)));
      }
      auto Dinv = mat_inverse(mat_from_cols(dom));
      if (!Dinv) throw std::logic_error("rho_pieces: degenerate domain simplex");
      R.pieces.push_back(
          RepPiece{b.chart, bt.chart, dom, mat_mul(mat_from_cols(img), *Dinv)});
    }
  }
  for (const std::string& fk : N.frontier) {
    const PsiEntry& E = N.entries.at(fk);
    TileEdge ie{g.apply(E.edge.a), g.apply(E.edge.b), ""};
    auto ei = N.entries.find(ie.key());
    if (ei == N.entries.end()) continue;
    const PsiEntry& IE = ei->second;
    std::vector<Vec> img;
    for (size_t i = 0; i < E.labels.size(); ++i) {
      std::string key = tau_object_key(tau_transport(g, E.objects[i]));
      int j = find_label_index(IE.labels, key);
      if (j < 0) throw std::logic_error("rho_pieces: image entry lacks label " + key);
      img.push_back(IE.verts[j]);
    }
    auto Dinv = mat_inverse(mat_from_cols(E.verts));
    if (!Dinv) throw std::logic_error("rho_pieces: degenerate hole simplex");
    R.pieces.push_back(
        RepPiece{E.chart, IE.chart, E.verts, mat_mul(mat_from_cols(img), *Dinv)});
  }
  return R;
}

namespace {

// Does conv(E1) n conv(E2), taken across the chart gluing, exceed the hull
// of the vertices with common labels?  Shared points must have some zero
// coordinate; per coordinate an exact LP maximizes the total barycentric
// weight on the non-common vertices over the shared slice.
bool cross_chart_meets_in_common(const PsiEntry& E1, const PsiEntry& E2) {
  int dim = static_cast<int>(E1.verts[0].size());
  int n1 = static_cast<int>(E1.verts.size());
  int n2 = static_cast<int>(E2.verts.size());
  std::set<std::string> common;
  for (const auto& l : E1.labels)
    if (find_label_index(E2.labels, l) >= 0) common.insert(l);
  for (int zi = 0; zi < dim; ++zi) {
    Mat A(dim + 3, Vec(n1 + n2, Rational(0)));
    Vec bb(dim + 3, Rational(0));
    for (int r = 0; r < dim; ++r) {
      for (int c = 0; c < n1; ++c) A[r][c] = E1.verts[c][r];
      for (int c = 0; c < n2; ++c) A[r][n1 + c] = -E2.verts[c][r];
    }
    for (int c = 0; c < n1; ++c) A[dim][c] = 1;
    bb[dim] = 1;
    for (int c = 0; c < n2; ++c) A[dim + 1][n1 + c] = 1;
    bb[dim + 1] = 1;
    for (int c = 0; c < n1; ++c) A[dim + 2][c] = E1.verts[c][zi];
    Vec obj(n1 + n2, Rational(0));
    for (int c = 0; c < n1; ++c)
      if (!common.count(E1.labels[c])) obj[c] = 1;
    for (int c = 0; c < n2; ++c)
      if (!common.count(E2.labels[c])) obj[n1 + c] = 1;
    LPResult r = lp_max(A, bb, obj);
    if (r.status == LPStatus::Optimal && r.value > 0) return false;
  }
  return true;
}

std::string rat_profile(const std::vector<Rational>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += " -> ";
    out += rat_str(v[i]);
  }
  return out;
}

}  // namespace

NetworkReport verify_network(const Network& N, const NetworkAuditOptions& opts) {
  NetworkReport rep;
  auto add = [&](const std::string& name, bool pass, const std::string& detail) {
    rep.checks.push_back(NetworkCheck{name, pass, detail});
  };
  const ModularBlock& model = N.model;
  const int k = N.k;

  {  // each block labelling intertwines its triangle rotation with sigma
    bool ok = true;
    std::string bad;
    for (const BlockInstance& b : N.blocks) {
      Mat2 r = ccw_rotation(b.tri[0], b.tri[1], b.tri[2]);
      for (int id = 0; id < 3 * k && ok; ++id) {
        if (tau_object_key(tau_transport(r, b.label_of[id])) !=
            b.label_keys[sigma_vertex(k, id)]) {
          ok = false;
          bad = "block " + b.addr;
        }
      }
      if (!ok) break;
    }
    add("labelling-equivariance", ok,
        ok ? std::to_string(N.blocks.size()) + " blocks" : bad);
  }

  {  // label <-> position bijection across cloud, entries and blocks
    bool ok = true;
    std::string bad;
    std::map<std::string, std::string> by_point;
    for (const auto& kv : N.cloud) {
      auto ins = by_point.emplace(chart_point_key(kv.second), kv.first);
      if (!ins.second) {
        ok = false;
        bad = "labels " + kv.first + " and " + ins.first->second + " share a point";
        break;
      }
    }
    for (auto it = N.entries.begin(); ok && it != N.entries.end(); ++it) {
      const PsiEntry& E = it->second;
      for (size_t i = 0; i < E.verts.size(); ++i) {
        auto c = N.cloud.find(E.labels[i]);
        if (c == N.cloud.end() ||
            !chart_point_eq(c->second, ChartPoint{E.chart, E.verts[i]})) {
          ok = false;
          bad = "entry " + it->first;
          break;
        }
      }
    }
    for (size_t bi = 0; ok && bi < N.blocks.size(); ++bi) {
      const BlockInstance& b = N.blocks[bi];
      for (int id = 0; id < 3 * k; ++id) {
        auto c = N.cloud.find(b.label_keys[id]);
        if (c == N.cloud.end() ||
            !chart_point_eq(c->second, ChartPoint{b.chart, mat_vec(b.placement,
                                                                   model.vertex(id))})) {
          ok = false;
          bad = "block " + b.addr;
          break;
        }
      }
    }
    add("vertex-labels-bijective", ok,
        ok ? std::to_string(N.cloud.size()) + " labelled vertices" : bad);
  }

  {  // plugging blocks reproduce their hole simplices label for label
    bool ok = true;
    std::string bad;
    int checked = 0;
    Selector ca = selector_all(PairSel::CA, k);
    for (const auto& kv : N.entries) {
      auto fb = N.block_by_addr.find(kv.second.edge.addr);
      if (fb == N.block_by_addr.end()) continue;  // unplugged frontier edge
      const PsiEntry& E = kv.second;
      const BlockInstance& b = N.blocks[fb->second];
      if (b.chart != E.chart) {
        ok = false;
        bad = "chart mismatch at " + kv.first;
        break;
      }
      std::map<std::string, std::string> have;
      for (size_t i = 0; i < E.verts.size(); ++i)
        have[E.labels[i]] = chart_point_key(ChartPoint{E.chart, E.verts[i]});
      for (int id : model.simplex_vertex_ids(ca)) {
        auto it = have.find(b.label_keys[id]);
        if (it == have.end() ||
            it->second != chart_point_key(ChartPoint{
                              b.chart, mat_vec(b.placement, model.vertex(id))})) {
          ok = false;
          bad = "far side of " + kv.first;
          break;
        }
      }
      if (!ok) break;
      ++checked;
    }
    add("terminal-sharing", ok, ok ? std::to_string(checked) + " plugged edges" : bad);
  }

  {  // pairwise block interiors: disjoint unless nested through an inner simplex
    bool ok = true;
    std::string bad;
    long nested = 0, disjoint = 0;
    std::vector<std::vector<Vec>> amb(N.blocks.size());
    std::vector<std::vector<Vec>> iab(N.blocks.size()), ibc(N.blocks.size());
    Selector sab = selector_all(PairSel::AB, k), sbc = selector_all(PairSel::BC, k);
    for (size_t i = 0; i < N.blocks.size(); ++i) {
      amb[i] = placement_cols(N.blocks[i].placement);
      for (int id : model.simplex_vertex_ids(sab))
        iab[i].push_back(mat_vec(N.blocks[i].placement, model.vertex(id)));
      for (int id : model.simplex_vertex_ids(sbc))
        ibc[i].push_back(mat_vec(N.blocks[i].placement, model.vertex(id)));
    }
    for (size_t i = 0; i + 1 < N.blocks.size() && ok; ++i) {
      for (size_t j = i + 1; j < N.blocks.size(); ++j) {
        const BlockInstance &b1 = N.blocks[i], &b2 = N.blocks[j];
        if (b1.chart != b2.chart) continue;
        if (!interiors_intersect(amb[i], amb[j])) {
          ++disjoint;
          continue;
        }
        if (b1.level == b2.level) {
          ok = false;
          bad = "blocks " + b1.addr + " and " + b2.addr;
          break;
        }
        size_t deep = b1.level > b2.level ? i : j;
        size_t shal = b1.level > b2.level ? j : i;
        if (!simplex_contains_simplex(iab[shal], amb[deep]) &&
            !simplex_contains_simplex(ibc[shal], amb[deep])) {
          ok = false;
          bad = "blocks " + b1.addr + " and " + b2.addr;
          break;
        }
        ++nested;
      }
    }
    add("interior-disjointness", ok,
        ok ? std::to_string(disjoint) + " disjoint pairs, " + std::to_string(nested) +
                 " nested through inner simplices"
           : bad);
  }

  {  // per chart, core regions plus frontier holes have total volume exactly 1
    Rational fab = simplex_det_abs(model.simplex(selector_all(PairSel::AB, k)));
    Rational fbc = simplex_det_abs(model.simplex(selector_all(PairSel::BC, k)));
    Rational corefrac = Rational(1) - fab - fbc;
    Rational vol0(0), vol1(0);
    for (const BlockInstance& b : N.blocks)
      (b.chart == 0 ? vol0 : vol1) += b.det_abs * corefrac;
    for (const std::string& fk : N.frontier) {
      const PsiEntry& E = N.entries.at(fk);
      (E.chart == 0 ? vol0 : vol1) += simplex_det_abs(E.verts);
    }
    bool ok = vol0 == 1 && vol1 == 1;
    add("chart-volume", ok, "plus " + rat_str(vol0) + ", minus " + rat_str(vol1));
  }

  {  // arc nesting transfers to simplex nesting, arc disjointness to interior
     // disjointness with boundaries meeting in the common labelled hull
    bool ok = true;
    std::string bad;
    long pairs = 0;
    std::vector<const PsiEntry*> es;
    for (const auto& kv : N.entries) es.push_back(&kv.second);
    for (size_t i = 0; i + 1 < es.size() && ok; ++i) {
      for (size_t j = i + 1; j < es.size(); ++j) {
        const PsiEntry &E1 = *es[i], &E2 = *es[j];
        ArcRelation rel = arc_relation(E1.edge, E2.edge);
        bool good = true;
        switch (rel) {
          case ArcRelation::Nested12:
            good = E1.chart == E2.chart && simplex_contains_simplex(E2.verts, E1.verts);
            break;
          case ArcRelation::Nested21:
            good = E1.chart == E2.chart && simplex_contains_simplex(E1.verts, E2.verts);
            break;
          case ArcRelation::DisjointInteriors:
            if (E1.chart == E2.chart)
              good = !interiors_intersect(E1.verts, E2.verts) &&
                     boundaries_meet_in_common_hull(E1.verts, E2.verts);
            else
              good = cross_chart_meets_in_common(E1, E2);
            break;
          default:
            good = false;
            break;
        }
        if (!good) {
          ok = false;
          bad = "edges " + E1.edge.key() + " and " + E2.edge.key();
          break;
        }
        ++pairs;
      }
    }
    add("arc-simplex-correspondence", ok, ok ? std::to_string(pairs) + " entry pairs" : bad);
  }

  {  // every deeper edge simplex sits inside its parent's
    bool ok = true;
    std::string bad;
    int checked = 0;
    std::map<std::string, const PsiEntry*> by_addr;
    for (const auto& kv : N.entries) by_addr[kv.second.edge.addr] = &kv.second;
    for (const auto& kv : N.entries) {
      const PsiEntry& E = kv.second;
      if (E.level == 0) continue;
      auto pit = by_addr.find(E.edge.addr.substr(0, E.edge.addr.size() - 1));
      if (pit == by_addr.end() || pit->second->chart != E.chart ||
          !simplex_contains_simplex(pit->second->verts, E.verts)) {
        ok = false;
        bad = "edge " + kv.first;
        break;
      }
      ++checked;
    }
    add("level-nesting", ok, ok ? std::to_string(checked) + " child simplices" : bad);
  }

  {  // worst simplex diameter per level never grows
    std::vector<Rational> mx(N.depth + 1, Rational(0));
    for (const auto& kv : N.entries) {
      const PsiEntry& E = kv.second;
      if (E.diam_sq > mx[E.level]) mx[E.level] = E.diam_sq;
    }
    bool ok = true;
    for (int m = 1; m <= N.depth; ++m)
      if (mx[m] > mx[m - 1]) ok = false;
    add("diameter-decay", ok, "squared diameters " + rat_profile(mx));
  }

  {  // orbit of one labelled axis point fills out the vertex cloud
    std::string p0;
    for (const auto& kv : N.cloud)
      if (kv.first.rfind("g:", 0) == 0) {
        p0 = kv.first;
        break;
      }
    if (p0.empty()) {
      add("density-probe", false, "no geodesic-labelled vertex");
    } else {
      const TauObject& o0 = N.objects.at(p0);
      std::map<std::string, int> first_len;
      first_len[p0] = 0;
      for_reduced_words(opts.minimality_words, [&](const Mat2& g, int len) {
        std::string key = tau_object_key(tau_transport(g, o0));
        if (!N.cloud.count(key)) return;
        auto it = first_len.find(key);
        if (it == first_len.end() || it->second > len) first_len[key] = len;
      });
      std::vector<Rational> radius(opts.minimality_words + 1, Rational(0));
      std::vector<int> uncovered(opts.minimality_words + 1, 0);
      for (int L = 0; L <= opts.minimality_words; ++L) {
        Rational mm(0);
        int unc = 0;
        for (const auto& kv : N.cloud) {
          bool any = false;
          Rational best(0);
          for (const auto& fl : first_len) {
            if (fl.second > L) continue;
            const ChartPoint& op = N.cloud.at(fl.first);
            if (op.chart != kv.second.chart) continue;
            Rational d = squared_distance(op.x, kv.second.x);
            if (!any || d < best) {
              best = d;
              any = true;
            }
          }
          if (!any)
            ++unc;
          else if (best > mm)
            mm = best;
        }
        radius[L] = mm;
        uncovered[L] = unc;
      }
      int L0 = -1;
      for (int L = 0; L <= opts.minimality_words; ++L)
        if (uncovered[L] == 0) {
          L0 = L;
          break;
        }
      bool ok = L0 >= 0 && L0 < opts.minimality_words &&
                radius[opts.minimality_words] < radius[L0];
      add("density-probe", ok,
          "orbit points " + std::to_string(first_len.size()) + ", covering radius^2 " +
              rat_profile(radius));
    }
  }

  {  // no nontrivial group word returns a shrunken core simplex onto itself
    const BlockInstance& b0 = N.blocks[0];
    std::vector<int> ids0 = model.simplex_vertex_ids(model.core[0]);
    std::vector<Vec> K0 = model.simplex(model.core[0]);
    Vec bc = barycenter(K0);
    Rational shrink = make_rational(7, 8);  // keeps the compact off the limit set
    std::vector<Vec> K;
    for (const Vec& v : K0) K.push_back(vec_add(bc, vec_scale(shrink, vec_sub(v, bc))));
    long evaluated = 0, skipped = 0, hits = 0;
    int deepest = 0;
    bool ok = true;
    for_reduced_words(opts.discontinuity_words, [&](const Mat2& g, int len) {
      if (g.is_identity_psl()) return;
      auto it = N.block_by_tri.find(tri_key(tri_image(g, b0.tri)));
      if (it == N.block_by_tri.end()) {
        ++skipped;
        return;
      }
      ++evaluated;
      if (len > deepest) deepest = len;
      const BlockInstance& bt = N.blocks[it->second];
      if (bt.chart != 0) return;  // strictly interior compacts cannot meet across charts
      std::vector<Vec> img;
      for (int id : ids0) {
        auto li = bt.label_index.find(tau_object_key(tau_transport(g, b0.label_of[id])));
        if (li == bt.label_index.end())
          throw std::logic_error("return-set probe: image block lacks a label");
        img.push_back(mat_vec(bt.placement, model.vertex(li->second)));
      }
      Vec ib = barycenter(img);
      std::vector<Vec> K2;
      for (const Vec& v : img) K2.push_back(vec_add(ib, vec_scale(shrink, vec_sub(v, ib))));
      if (convex_hulls_intersect(K, K2)) ++hits;
    });
    ok = evaluated > 0 && hits == 0;
    add("return-set-probe", ok,
        std::to_string(evaluated) + " images tested to word length " +
            std::to_string(deepest) + ", " + std::to_string(hits) + " returns, " +
            std::to_string(skipped) + " beyond depth");
  }

  rep.pass = true;
  for (const NetworkCheck& c : rep.checks) rep.pass = rep.pass && c.pass;
  return rep;
}

}  // namespace mcq
