#pragma once

#include <optional>
#include <vector>

#include "mcq/lp.hpp"
#include "mcq/matrix.hpp"

namespace mcq {

// Simplices are vertex lists (each Vec of the ambient dimension).  The full
// simplices of a block chart have 2k vertices spanning the hyperplane
// sum x_i = 1 in R^{2k}; lower-dimensional faces just carry fewer vertices.

// Closed containment: p in conv(verts)?  Works for any affinely independent
// vertex set.
bool simplex_contains_point(const std::vector<Vec>& verts, const Vec& p);

// Barycentric coordinates if p is in the affine hull (delegates to
// barycentric()), nullopt otherwise.
std::optional<Vec> simplex_coords(const std::vector<Vec>& verts, const Vec& p);

// Every vertex of inner inside conv(outer)?  For equal-dimension simplices
// this is equivalent to containment of the whole simplex.
bool simplex_contains_simplex(const std::vector<Vec>& outer,
                              const std::vector<Vec>& inner);

// Do the relative interiors of conv(U) and conv(V) meet?  Decided by the
// exact LP  max t  s.t.  sum lam_i u_i = sum mu_j v_j, sums 1, lam >= t,
// mu >= t.
bool interiors_intersect(const std::vector<Vec>& U, const std::vector<Vec>& V);

// conv(U) n conv(V) != empty (closed).
bool convex_hulls_intersect(const std::vector<Vec>& U, const std::vector<Vec>& V);

// Given two full simplices (vertex count == ambient dim, all in the sum=1
// hyperplane) that share the vertices listed in common (index pairs into U
// and V), decide whether conv(U) n conv(V) equals exactly the common face.
// Reduction: barycentric coordinates of V's extra vertices with respect to U,
// restricted to U's non-shared slots, give direction vectors z_i; the
// intersection exceeds the common face iff cone(z_1..z_d) meets the positive
// orthant in a nonzero point.
bool meets_exactly_in_common_face(const std::vector<Vec>& U,
                                  const Mat& U_inv_cols,
                                  const std::vector<Vec>& V,
                                  const std::vector<std::pair<int, int>>& common);

// Boundary test used for edge-simplex audits: bd(conv U) n bd(conv V) equals
// the hull of the shared vertices.  Checked facet pair by facet pair with an
// LP that maximizes total weight on non-shared vertices.
bool boundaries_meet_in_common_hull(const std::vector<Vec>& U,
                                    const std::vector<Vec>& V);

// |det [v_1 ... v_n]| for n vertices in R^n: 2k-vertex chart simplices have
// content |det| / (2k-1)! as (2k-1)-volume inside the sum=1 hyperplane, but
// we only ever compare these, so the raw |det| serves as the volume measure.
Rational simplex_det_abs(const std::vector<Vec>& verts);

// max over vertex pairs of squared euclidean distance.
Rational diameter_sq(const std::vector<Vec>& verts);

Vec barycenter(const std::vector<Vec>& verts);

// Columns of the inverse of the vertex matrix [v_1 ... v_n] (n = dim);
// nullopt if the simplex is degenerate.  Cache this for repeated
// coordinate computations against one simplex.
std::optional<Mat> vertex_matrix_inverse(const std::vector<Vec>& verts);

}  // namespace mcq
