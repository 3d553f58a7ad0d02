#include "mcq/geometry.hpp"

#include <stdexcept>

namespace mcq {

std::optional<Vec> simplex_coords(const std::vector<Vec>& verts, const Vec& p) {
  return barycentric(verts, p);
}

bool simplex_contains_point(const std::vector<Vec>& verts, const Vec& p) {
  auto lam = barycentric(verts, p);
  if (!lam) return false;
  for (const auto& l : *lam)
    if (sgn(l) < 0) return false;
  return true;
}

bool simplex_contains_simplex(const std::vector<Vec>& outer,
                              const std::vector<Vec>& inner) {
  for (const auto& v : inner)
    if (!simplex_contains_point(outer, v)) return false;
  return true;
}

// Relative interiors meet iff a common point exists whose coefficients on
// both sides can all be pushed above some t > 0.  Encode lam_i = alpha_i + t,
// mu_j = beta_j + t with alpha, beta >= 0 and free t = t+ - t-, maximize t.
bool interiors_intersect(const std::vector<Vec>& U, const std::vector<Vec>& V) {
  size_t d = U[0].size();
  size_t nu = U.size(), nv = V.size();
  size_t cols = nu + nv + 2;  // alpha, beta, t+, t-
  Mat A(d + 2, Vec(cols, Rational(0)));
  Vec b(d + 2, Rational(0));
  // lam_i = alpha_i + t, mu_j = beta_j + t, t = t+ - t-
  for (size_t r = 0; r < d; ++r) {
    Rational tu = 0, tv = 0;
    for (size_t i = 0; i < nu; ++i) {
      A[r][i] = U[i][r];
      tu += U[i][r];
    }
    for (size_t j = 0; j < nv; ++j) {
      A[r][nu + j] = -V[j][r];
      tv += V[j][r];
    }
    A[r][nu + nv] = tu - tv;
    A[r][nu + nv + 1] = -(tu - tv);
  }
  for (size_t i = 0; i < nu; ++i) A[d][i] = 1;
  A[d][nu + nv] = Rational(static_cast<long>(nu));
  A[d][nu + nv + 1] = -Rational(static_cast<long>(nu));
  b[d] = 1;
  for (size_t j = 0; j < nv; ++j) A[d + 1][nu + j] = 1;
  A[d + 1][nu + nv] = Rational(static_cast<long>(nv));
  A[d + 1][nu + nv + 1] = -Rational(static_cast<long>(nv));
  b[d + 1] = 1;
  Vec c(cols, Rational(0));
  c[nu + nv] = 1;
  c[nu + nv + 1] = -1;
  LPResult r = lp_max(A, b, c);
  if (r.status == LPStatus::Unbounded)
    throw std::logic_error("interiors_intersect: unbounded margin");
  return r.status == LPStatus::Optimal && sgn(r.value) > 0;
}

bool convex_hulls_intersect(const std::vector<Vec>& U, const std::vector<Vec>& V) {
  size_t d = U[0].size();
  size_t nu = U.size(), nv = V.size();
  Mat A(d + 2, Vec(nu + nv, Rational(0)));
  Vec b(d + 2, Rational(0));
  for (size_t r = 0; r < d; ++r) {
    for (size_t i = 0; i < nu; ++i) A[r][i] = U[i][r];
    for (size_t j = 0; j < nv; ++j) A[r][nu + j] = -V[j][r];
  }
  for (size_t i = 0; i < nu; ++i) A[d][i] = 1;
  b[d] = 1;
  for (size_t j = 0; j < nv; ++j) A[d + 1][nu + j] = 1;
  b[d + 1] = 1;
  return lp_feasible(A, b);
}

bool meets_exactly_in_common_face(const std::vector<Vec>& U,
                                  const Mat& U_inv_cols,
                                  const std::vector<Vec>& V,
                                  const std::vector<std::pair<int, int>>& common) {
  size_t n = U.size();
  std::vector<bool> u_common(n, false), v_common(V.size(), false);
  for (auto [iu, iv] : common) {
    u_common[iu] = true;
    v_common[iv] = true;
  }
  std::vector<int> free_u;  // slots of U not shared
  for (size_t i = 0; i < n; ++i)
    if (!u_common[i]) free_u.push_back(static_cast<int>(i));
  size_t dd = free_u.size();

  // Directions: barycentric coordinates (w.r.t. U) of V's non-shared
  // vertices, restricted to U's non-shared slots.
  std::vector<Vec> Z;
  for (size_t j = 0; j < V.size(); ++j) {
    if (v_common[j]) continue;
    Vec lam = mat_vec(U_inv_cols, V[j]);
    Vec z(dd);
    for (size_t t = 0; t < dd; ++t) z[t] = lam[free_u[t]];
    Z.push_back(z);
  }
  if (Z.size() != dd)
    throw std::invalid_argument("common-face test needs equal-size simplices");
  if (dd == 0) return true;  // identical vertex sets
  if (dd == 1) return sgn(Z[0][0]) < 0;

  // Does cone(Z) meet the nonnegative orthant outside the origin?
  // Variables mu >= 0 (sum 1) and w = Z mu >= 0; maximize sum w.
  size_t p = Z.size();
  Mat A(dd + 1, Vec(p + dd, Rational(0)));
  Vec b(dd + 1, Rational(0));
  for (size_t r = 0; r < dd; ++r) {
    for (size_t j = 0; j < p; ++j) A[r][j] = Z[j][r];
    A[r][p + r] = -1;
  }
  for (size_t j = 0; j < p; ++j) A[dd][j] = 1;
  b[dd] = 1;
  Vec c(p + dd, Rational(0));
  for (size_t r = 0; r < dd; ++r) c[p + r] = 1;
  LPResult r = lp_max(A, b, c);
  if (r.status == LPStatus::Unbounded)
    throw std::logic_error("cone test unbounded");
  bool overlap = r.status == LPStatus::Optimal && sgn(r.value) > 0;
  return !overlap;
}

bool boundaries_meet_in_common_hull(const std::vector<Vec>& U,
                                    const std::vector<Vec>& V) {
  size_t nu = U.size(), nv = V.size();
  size_t d = U[0].size();
  std::vector<bool> u_common(nu, false);
  for (size_t i = 0; i < nu; ++i)
    for (size_t j = 0; j < nv; ++j)
      if (U[i] == V[j]) u_common[i] = true;

  // For each facet pair, any joint point must put all of its U-side weight on
  // shared vertices; by uniqueness of barycentric coordinates that places it
  // in the hull of the shared vertices.
  for (size_t i = 0; i < nu; ++i) {
    for (size_t j = 0; j < nv; ++j) {
      std::vector<int> ui, vj;
      for (size_t t = 0; t < nu; ++t)
        if (t != i) ui.push_back(static_cast<int>(t));
      for (size_t t = 0; t < nv; ++t)
        if (t != j) vj.push_back(static_cast<int>(t));
      size_t cols = ui.size() + vj.size();
      Mat A(d + 2, Vec(cols, Rational(0)));
      Vec b(d + 2, Rational(0));
      for (size_t r = 0; r < d; ++r) {
        for (size_t t = 0; t < ui.size(); ++t) A[r][t] = U[ui[t]][r];
        for (size_t t = 0; t < vj.size(); ++t)
          A[r][ui.size() + t] = -V[vj[t]][r];
      }
      for (size_t t = 0; t < ui.size(); ++t) A[d][t] = 1;
      b[d] = 1;
      for (size_t t = 0; t < vj.size(); ++t) A[d + 1][ui.size() + t] = 1;
      b[d + 1] = 1;
      Vec c(cols, Rational(0));
      for (size_t t = 0; t < ui.size(); ++t)
        if (!u_common[ui[t]]) c[t] = 1;
      LPResult r = lp_max(A, b, c);
      if (r.status == LPStatus::Infeasible) continue;
      if (r.status != LPStatus::Optimal)
        throw std::logic_error("facet-pair LP unbounded");
      if (sgn(r.value) > 0) return false;
    }
  }
  return true;
}

Rational simplex_det_abs(const std::vector<Vec>& verts) {
  size_t n = verts.size();
  Mat A(n, Vec(n));
  for (size_t r = 0; r < n; ++r)
    for (size_t i = 0; i < n; ++i) A[r][i] = verts[i][r];
  Rational dv = det_bareiss(A);
  return sgn(dv) < 0 ? Rational(-dv) : dv;
}

Rational diameter_sq(const std::vector<Vec>& verts) {
  Rational best = 0;
  for (size_t i = 0; i < verts.size(); ++i)
    for (size_t j = i + 1; j < verts.size(); ++j) {
      Rational d = squared_distance(verts[i], verts[j]);
      if (d > best) best = d;
    }
  return best;
}

Vec barycenter(const std::vector<Vec>& verts) {
  Vec s(verts[0].size(), Rational(0));
  for (const auto& v : verts) s = vec_add(s, v);
  Rational inv = make_rational(1, static_cast<long>(verts.size()));
  return vec_scale(inv, s);
}

std::optional<Mat> vertex_matrix_inverse(const std::vector<Vec>& verts) {
  size_t n = verts.size();
  Mat A(n, Vec(n));
  for (size_t r = 0; r < n; ++r)
    for (size_t i = 0; i < n; ++i) A[r][i] = verts[i][r];
  return mat_inverse(A);
}

}  // namespace mcq
