#pragma once

#include <map>
#include <string>
#include <vector>

#include "mcq/blockcore.hpp"
#include "mcq/geometry.hpp"
#include "mcq/pattern.hpp"

namespace mcq {

// Weights in (0, 1] attached to the group objects that label block
// vertices.  Tessellation vertices always weigh 1.  A geodesic resolves
// through the explicit per-axis table first, then the per-seed orbit table
// (keyed by the pattern seed word), then the fallback.
struct Weighting {
  std::map<std::string, Rational> orbit_weights;  // seed word -> weight
  std::map<std::string, Rational> axis_weights;   // geodesic key -> weight
  Rational fallback{1};
};

Weighting uniform_weighting(const Rational& w);  // constant w on geodesics
// Range check on every stored weight; throws std::domain_error.
void validate_weighting(const Weighting& f);

// ---------------------------------------------------------------------------
// Partial prisms.
//
// Take the cone from `apex` through the simplex spanned by `outer` and cut
// it by a second cross section: inner[i] sits on the half-open segment
// (apex, outer[i]].  The prism is the convex region between the two cross
// sections, equal to the hull of inner + outer.  `flat` marks the
// degenerate case where the cross sections coincide pointwise.

struct PartialPrism {
  Vec apex;
  std::vector<Vec> outer;
  std::vector<Vec> inner;
  bool flat{false};
};

// Validates the ray condition; throws std::invalid_argument.
PartialPrism make_prism(const Vec& apex, std::vector<Vec> outer,
                        std::vector<Vec> inner);

bool prism_contains(const PartialPrism& P, const Vec& p);

// Volume in vertex-determinant units: det<apex, outer> - det<apex, inner>.
// Only meaningful when apex + outer has full ambient cardinality.
Rational prism_volume(const PartialPrism& P);

// Canonical triangulation: a one-vertex prism is the segment itself, a flat
// prism contributes no cells, and otherwise the boundary triangulations are
// coned to the centroid of the vertex set.
std::vector<std::vector<Vec>> prism_cells(const PartialPrism& P);

// Canonical involution: swaps the two cross sections along their matching
// rays, restricts to the same construction on every boundary prism, and is
// the identity on flat prisms.  Affine on each triangulation cell.  Throws
// std::domain_error for points outside the prism.
Vec prism_involution(const PartialPrism& P, const Vec& p);

// ---------------------------------------------------------------------------
// Separators.
//
// Scale every vertex of a simplex toward the weighted barycenter
//   beta = sum w_i v_i / sum w_i,
//   inner[i] = w_i * base[i] + (1 - w_i) * beta,
// so inner[i] == base[i] exactly when w_i == 1.  The shell between the two
// simplex boundaries splits into one partial prism per vertex, apex beta,
// the i-th spanned by the faces opposite vertex i.

struct Separator {
  std::vector<Vec> base;
  std::vector<Rational> weights;
  Vec beta;
  std::vector<Vec> inner;
  std::vector<PartialPrism> prisms;  // prism i opposite vertex i
};

// Throws std::domain_error for weights outside (0, 1] and
// std::invalid_argument for a degenerate base simplex.
Separator make_separator(const std::vector<Vec>& base,
                         const std::vector<Rational>& weights);

// vol(base) - vol(inner) in determinant units; equals the prism sum.
Rational separator_volume(const Separator& S);
std::vector<std::vector<Vec>> separator_cells(const Separator& S);
bool separator_contains(const Separator& S, const Vec& p);
// The assembled involution, swapping the two boundaries vertex-by-vertex
// along rays through beta; domain_error outside the shell.
Vec separator_involution(const Separator& S, const Vec& p);

// Image of the base vertices under the affine map that carries the inner
// simplex back onto the base.  Rebuilding a separator on the expanded
// simplex with the same weights puts the old base at its inner boundary.
std::vector<Vec> separator_expanded(const Separator& S);

// ---------------------------------------------------------------------------
// Warped blocks.
//
// P_S is the projective self-map of the chart simplex that scales
// coordinate i by the weight of the i-th basis vertex (an A_j or C_j of the
// block) and renormalizes.  It fixes every basis vertex, maps sub-simplices
// onto the hulls of their image vertices, and is the identity when the
// basis weights are constant.  Weights are indexed by model vertex id (3k
// entries; only the A/C ids feed P_S).

Vec warp_point(const ModularBlock& blk, const std::vector<Rational>& w,
               const Vec& x);

struct WarpedBlock {
  int k{2};
  std::vector<Rational> w;  // 3k, by vertex id
  std::vector<Vec> verts;   // 3k, P_S images of the block vertices
};

WarpedBlock warp(const ModularBlock& blk, const std::vector<Rational>& w);

// W_S: the piecewise-affine carrier of the warp, agreeing with P_S on the
// vertices of every core piece and extended affinely inside each.
Vec warp_map(const ModularBlock& blk, const WarpedBlock& wb, const Vec& p);
Vec warp_map_inv(const ModularBlock& blk, const WarpedBlock& wb, const Vec& p);
// The block rotation conjugated by W_S: order three on the warped core.
Vec warped_sigma(const ModularBlock& blk, const WarpedBlock& wb, const Vec& p);

// ---------------------------------------------------------------------------
// Modified blocks.
//
// The warped core plus one separator collar per terminal.  The collars on
// the two warped inner terminals keep their outer boundaries glued to the
// core and free their shrunk inner boundaries as the new holes.  The
// General outer collar is rebuilt on the expanded simplex so that its inner
// boundary lands exactly on the chart simplex; the block then fills the
// expanded simplex minus the two holes.  The Special block instead hangs
// the third collar inside the opposite chart's simplex, leaving the shrunk
// copy there as its outer hole.

struct ModifiedBlock {
  enum class Kind { General, Special };
  Kind kind{Kind::General};
  int k{2};
  std::vector<Rational> w;            // 3k, by vertex id
  WarpedBlock core;
  std::vector<int> ids_ab, ids_bc, ids_ca;  // selector vertex-id order
  Separator sep_ab, sep_bc;           // collars inside the warped terminals
  Separator sep_out;
  std::vector<Vec> outer_terminal;    // General: sep_out.base; Special: sep_out.inner
};

ModifiedBlock modified_block(const ModularBlock& blk,
                             const std::vector<Rational>& w,
                             ModifiedBlock::Kind kind);

}  // namespace mcq
