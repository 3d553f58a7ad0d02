#include "mcq/modblocks.hpp"

#include <algorithm>
#include <stdexcept>

namespace mcq {

namespace {

void check_weight_range(const Rational& w, const std::string& where) {
  if (w <= 0 || w > 1)
    throw std::domain_error(where + ": weight " + rat_str(w) +
                            " outside (0, 1]");
}

// Affine application by matched vertex lists: p expressed in dom
// coordinates, replayed on img.
Vec apply_matched(const std::vector<Vec>& dom, const std::vector<Vec>& img,
                  const Vec& p) {
  auto lam = barycentric(dom, p);
  if (!lam)
    throw std::logic_error("apply_matched: point left the affine hull");
  Vec out(img[0].size(), Rational(0));
  for (size_t i = 0; i < img.size(); ++i)
    out = vec_add(out, vec_scale((*lam)[i], img[i]));
  return out;
}

std::vector<Vec> distinct_verts(const PartialPrism& P) {
  std::vector<Vec> vs;
  auto push = [&vs](const Vec& v) {
    for (const Vec& u : vs)
      if (u == v) return;
    vs.push_back(v);
  };
  for (const Vec& v : P.inner) push(v);
  for (const Vec& v : P.outer) push(v);
  return vs;
}

// Rank of the set of edge vectors v_i - v_0, by fraction-free elimination.
int affine_rank(const std::vector<Vec>& verts) {
  if (verts.size() < 2) return 0;
  std::vector<Vec> rows;
  for (size_t i = 1; i < verts.size(); ++i)
    rows.push_back(vec_sub(verts[i], verts[0]));
  size_t dim = verts[0].size();
  int rank = 0;
  size_t row = 0;
  for (size_t col = 0; col < dim && row < rows.size(); ++col) {
    size_t piv = row;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[row]);
    for (size_t r = row + 1; r < rows.size(); ++r) {
      if (rows[r][col] == 0) continue;
      Rational f = rows[r][col] / rows[row][col];
      for (size_t c = col; c < dim; ++c)
        rows[r][c] -= f * rows[row][c];
    }
    ++rank;
    ++row;
  }
  return rank;
}

// Determinant-unit volume of a point set spanning a full simplex: either a
// square vertex matrix (chart simplices) or dim + 1 points measured by edge
// vectors (full-dimensional simplices of the ambient space).
Rational point_volume(const std::vector<Vec>& verts) {
  size_t dim = verts[0].size();
  if (verts.size() == dim) return simplex_det_abs(verts);
  if (verts.size() == dim + 1) {
    Mat edges(dim, Vec(dim, Rational(0)));
    for (size_t i = 1; i < verts.size(); ++i) {
      Vec e = vec_sub(verts[i], verts[0]);
      for (size_t r = 0; r < dim; ++r) edges[r][i - 1] = e[r];
    }
    Rational d = det_bareiss(edges);
    return d < 0 ? Rational(-d) : d;
  }
  throw std::invalid_argument("point_volume: vertex count fits no simplex");
}

bool hull_contains(const std::vector<Vec>& verts, const Vec& p) {
  size_t dim = p.size();
  Mat A(dim + 1, Vec(verts.size(), Rational(0)));
  Vec b(dim + 1, Rational(0));
  for (size_t i = 0; i < verts.size(); ++i) {
    for (size_t r = 0; r < dim; ++r) A[r][i] = verts[i][r];
    A[dim][i] = 1;
  }
  for (size_t r = 0; r < dim; ++r) b[r] = p[r];
  b[dim] = 1;
  return lp_feasible(A, b);
}

PartialPrism side_prism(const PartialPrism& P, size_t j) {
  std::vector<Vec> outer, inner;
  for (size_t l = 0; l < P.outer.size(); ++l) {
    if (l == j) continue;
    outer.push_back(P.outer[l]);
    inner.push_back(P.inner[l]);
  }
  return make_prism(P.apex, std::move(outer), std::move(inner));
}

Vec prism_involution_inner(const PartialPrism& P, const Vec& p) {
  if (P.flat) return p;
  size_t m = P.outer.size();
  if (m == 1) return vec_sub(vec_add(P.inner[0], P.outer[0]), p);

  Vec c = barycenter(distinct_verts(P));
  if (p == c) return p;

  std::vector<Vec> cone_in{c}, cone_out{c};
  cone_in.insert(cone_in.end(), P.inner.begin(), P.inner.end());
  cone_out.insert(cone_out.end(), P.outer.begin(), P.outer.end());
  if (simplex_contains_point(cone_in, p))
    return apply_matched(cone_in, cone_out, p);
  if (simplex_contains_point(cone_out, p))
    return apply_matched(cone_out, cone_in, p);

  // The ray from the centroid through p exits through a wall of the cone;
  // wall j is where the frame coordinate of outer[j] vanishes.
  std::vector<Vec> frame{P.apex};
  frame.insert(frame.end(), P.outer.begin(), P.outer.end());
  auto mu_c = barycentric(frame, c);
  auto mu_p = barycentric(frame, p);
  if (!mu_c || !mu_p)
    throw std::logic_error("prism_involution: point left the cone frame");
  for (size_t j = 0; j < m; ++j) {
    Rational cj = (*mu_c)[j + 1], pj = (*mu_p)[j + 1];
    if (cj == pj) continue;
    Rational s = cj / (cj - pj);
    if (s < 1) continue;
    Vec q = vec_add(c, vec_scale(s, vec_sub(p, c)));
    PartialPrism side = side_prism(P, j);
    if (!prism_contains(side, q)) continue;
    Vec r = prism_involution_inner(side, q);
    return vec_add(c, vec_scale(Rational(1) / s, vec_sub(r, c)));
  }
  throw std::logic_error("prism_involution: no boundary piece matched");
}

std::vector<Rational> pick_weights(const std::vector<Rational>& w,
                                   const std::vector<int>& ids) {
  std::vector<Rational> out;
  out.reserve(ids.size());
  for (int id : ids) out.push_back(w[id]);
  return out;
}

std::vector<Vec> pick_verts(const std::vector<Vec>& verts,
                            const std::vector<int>& ids) {
  std::vector<Vec> out;
  out.reserve(ids.size());
  for (int id : ids) out.push_back(verts[id]);
  return out;
}

}  // namespace

Weighting uniform_weighting(const Rational& w) {
  Weighting f;
  f.fallback = w;
  validate_weighting(f);
  return f;
}

void validate_weighting(const Weighting& f) {
  for (const auto& [word, w] : f.orbit_weights)
    check_weight_range(w, "weighting[" + word + "]");
  for (const auto& [key, w] : f.axis_weights)
    check_weight_range(w, "weighting[" + key + "]");
  check_weight_range(f.fallback, "weighting fallback");
}

PartialPrism make_prism(const Vec& apex, std::vector<Vec> outer,
                        std::vector<Vec> inner) {
  if (outer.empty() || outer.size() != inner.size())
    throw std::invalid_argument("make_prism: cross sections must match");
  if (affine_rank(outer) != static_cast<int>(outer.size()) - 1)
    throw std::invalid_argument("make_prism: outer section degenerate");
  std::vector<Vec> cone{apex};
  cone.insert(cone.end(), outer.begin(), outer.end());
  if (affine_rank(cone) != static_cast<int>(outer.size()))
    throw std::invalid_argument("make_prism: apex lies in the outer hull");
  PartialPrism P;
  P.apex = apex;
  P.outer = std::move(outer);
  P.inner = std::move(inner);
  P.flat = true;
  for (size_t i = 0; i < P.outer.size(); ++i) {
    Vec ray = vec_sub(P.outer[i], P.apex);
    Vec off = vec_sub(P.inner[i], P.apex);
    size_t c = 0;
    while (c < ray.size() && ray[c] == 0) ++c;
    if (c == ray.size())
      throw std::invalid_argument("make_prism: zero ray");
    Rational t = off[c] / ray[c];
    if (t <= 0 || t > 1 || off != vec_scale(t, ray))
      throw std::invalid_argument(
          "make_prism: inner vertex off its ray segment");
    if (t != 1) P.flat = false;
  }
  return P;
}

bool prism_contains(const PartialPrism& P, const Vec& p) {
  std::vector<Vec> vs;
  vs.insert(vs.end(), P.inner.begin(), P.inner.end());
  vs.insert(vs.end(), P.outer.begin(), P.outer.end());
  return hull_contains(vs, p);
}

Rational prism_volume(const PartialPrism& P) {
  std::vector<Vec> out{P.apex}, in{P.apex};
  out.insert(out.end(), P.outer.begin(), P.outer.end());
  in.insert(in.end(), P.inner.begin(), P.inner.end());
  return point_volume(out) - point_volume(in);
}

std::vector<std::vector<Vec>> prism_cells(const PartialPrism& P) {
  std::vector<std::vector<Vec>> cells;
  if (P.flat) return cells;
  size_t m = P.outer.size();
  if (m == 1) {
    cells.push_back({P.inner[0], P.outer[0]});
    return cells;
  }
  Vec c = barycenter(distinct_verts(P));
  auto cone = [&c, &cells](const std::vector<Vec>& face) {
    std::vector<Vec> cell{c};
    cell.insert(cell.end(), face.begin(), face.end());
    cells.push_back(std::move(cell));
  };
  cone(P.inner);
  cone(P.outer);
  for (size_t j = 0; j < m; ++j) {
    PartialPrism side = side_prism(P, j);
    for (const auto& cell : prism_cells(side)) cone(cell);
  }
  return cells;
}

Vec prism_involution(const PartialPrism& P, const Vec& p) {
  if (!prism_contains(P, p))
    throw std::domain_error("prism_involution: point outside the prism");
  return prism_involution_inner(P, p);
}

Separator make_separator(const std::vector<Vec>& base,
                         const std::vector<Rational>& weights) {
  if (base.size() < 2 || base.size() != weights.size())
    throw std::invalid_argument("make_separator: need one weight per vertex");
  if (affine_rank(base) != static_cast<int>(base.size()) - 1)
    throw std::invalid_argument("make_separator: degenerate base simplex");
  for (const Rational& w : weights) check_weight_range(w, "make_separator");

  Separator S;
  S.base = base;
  S.weights = weights;
  Rational total(0);
  Vec beta(base[0].size(), Rational(0));
  for (size_t i = 0; i < base.size(); ++i) {
    beta = vec_add(beta, vec_scale(weights[i], base[i]));
    total += weights[i];
  }
  S.beta = vec_scale(Rational(1) / total, beta);
  for (size_t i = 0; i < base.size(); ++i)
    S.inner.push_back(vec_add(vec_scale(weights[i], base[i]),
                              vec_scale(1 - weights[i], S.beta)));
  for (size_t i = 0; i < base.size(); ++i) {
    std::vector<Vec> outer, inner;
    for (size_t l = 0; l < base.size(); ++l) {
      if (l == i) continue;
      outer.push_back(S.base[l]);
      inner.push_back(S.inner[l]);
    }
    S.prisms.push_back(make_prism(S.beta, std::move(outer), std::move(inner)));
  }
  return S;
}

Rational separator_volume(const Separator& S) {
  return point_volume(S.base) - point_volume(S.inner);
}

std::vector<std::vector<Vec>> separator_cells(const Separator& S) {
  std::vector<std::vector<Vec>> cells;
  for (const PartialPrism& P : S.prisms)
    for (auto& cell : prism_cells(P)) cells.push_back(std::move(cell));
  return cells;
}

bool separator_contains(const Separator& S, const Vec& p) {
  for (const PartialPrism& P : S.prisms)
    if (prism_contains(P, p)) return true;
  return false;
}

Vec separator_involution(const Separator& S, const Vec& p) {
  for (const PartialPrism& P : S.prisms)
    if (prism_contains(P, p)) return prism_involution_inner(P, p);
  throw std::domain_error("separator_involution: point outside the shell");
}

std::vector<Vec> separator_expanded(const Separator& S) {
  std::vector<Vec> out;
  out.reserve(S.base.size());
  for (const Vec& v : S.base) out.push_back(apply_matched(S.inner, S.base, v));
  return out;
}

Vec warp_point(const ModularBlock& blk, const std::vector<Rational>& w,
               const Vec& x) {
  size_t dim = static_cast<size_t>(blk.dim());
  if (x.size() != dim || w.size() != static_cast<size_t>(3 * blk.k))
    throw std::invalid_argument("warp_point: dimension mismatch");
  Vec y(dim, Rational(0));
  Rational total(0);
  for (size_t i = 0; i < dim; ++i) {
    int id = i < static_cast<size_t>(blk.k) ? static_cast<int>(i)
                                            : blk.k + static_cast<int>(i);
    y[i] = w[id] * x[i];
    total += y[i];
  }
  if (total == 0)
    throw std::domain_error("warp_point: point annihilated by the weights");
  for (Rational& c : y) c /= total;
  return y;
}

WarpedBlock warp(const ModularBlock& blk, const std::vector<Rational>& w) {
  if (w.size() != static_cast<size_t>(3 * blk.k))
    throw std::invalid_argument("warp: need one weight per block vertex");
  for (const Rational& wi : w) check_weight_range(wi, "warp");
  WarpedBlock wb;
  wb.k = blk.k;
  wb.w = w;
  for (int id = 0; id < 3 * blk.k; ++id)
    wb.verts.push_back(warp_point(blk, w, blk.vertex(id)));
  return wb;
}

Vec warp_map(const ModularBlock& blk, const WarpedBlock& wb, const Vec& p) {
  auto loc = locate_in_core(blk, p);
  if (!loc)
    throw std::domain_error("warp_map: point outside the core pieces");
  std::vector<int> ids = blk.simplex_vertex_ids(blk.core[loc->core_index]);
  Vec out(p.size(), Rational(0));
  for (size_t i = 0; i < ids.size(); ++i)
    out = vec_add(out, vec_scale(loc->lambda[i], wb.verts[ids[i]]));
  return out;
}

Vec warp_map_inv(const ModularBlock& blk, const WarpedBlock& wb,
                 const Vec& p) {
  for (const Selector& sel : blk.core) {
    std::vector<int> ids = blk.simplex_vertex_ids(sel);
    std::vector<Vec> verts = pick_verts(wb.verts, ids);
    if (!simplex_contains_point(verts, p)) continue;
    auto lam = simplex_coords(verts, p);
    if (!lam) continue;
    Vec out(p.size(), Rational(0));
    for (size_t i = 0; i < ids.size(); ++i)
      out = vec_add(out, vec_scale((*lam)[i], blk.vertex(ids[i])));
    return out;
  }
  throw std::domain_error("warp_map_inv: point outside the warped core");
}

Vec warped_sigma(const ModularBlock& blk, const WarpedBlock& wb,
                 const Vec& p) {
  return warp_map(blk, wb, sigma_apply(blk, warp_map_inv(blk, wb, p)));
}

ModifiedBlock modified_block(const ModularBlock& blk,
                             const std::vector<Rational>& w,
                             ModifiedBlock::Kind kind) {
  ModifiedBlock mb;
  mb.kind = kind;
  mb.k = blk.k;
  mb.w = w;
  mb.core = warp(blk, w);
  mb.ids_ab = blk.simplex_vertex_ids(selector_all(PairSel::AB, blk.k));
  mb.ids_bc = blk.simplex_vertex_ids(selector_all(PairSel::BC, blk.k));
  mb.ids_ca = blk.simplex_vertex_ids(selector_all(PairSel::CA, blk.k));
  mb.sep_ab = make_separator(pick_verts(mb.core.verts, mb.ids_ab),
                             pick_weights(w, mb.ids_ab));
  mb.sep_bc = make_separator(pick_verts(mb.core.verts, mb.ids_bc),
                             pick_weights(w, mb.ids_bc));

  std::vector<Vec> ca_verts = blk.simplex(selector_all(PairSel::CA, blk.k));
  std::vector<Rational> ca_w = pick_weights(w, mb.ids_ca);
  if (kind == ModifiedBlock::Kind::Special) {
    mb.sep_out = make_separator(ca_verts, ca_w);
    mb.outer_terminal = mb.sep_out.inner;
  } else {
    Separator raw = make_separator(ca_verts, ca_w);
    mb.sep_out = make_separator(separator_expanded(raw), ca_w);
    if (mb.sep_out.inner != ca_verts)
      throw std::logic_error(
          "modified_block: expanded collar missed the chart simplex");
    mb.outer_terminal = mb.sep_out.base;
  }
  return mb;
}

}  // namespace mcq
