#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "mcq/modtiling.hpp"
#include "mcq/quadsurd.hpp"

namespace mcq {

// Axis of a hyperbolic element of PSL2(Z): a geodesic with two irrational
// quadratic endpoints, oriented from repelling to attracting fixed point.
// Identity, for membership purposes, is the unordered endpoint pair.
struct Geodesic {
  QuadSurd att, rep;  // attracting / repelling fixed points
  Mat2 holonomy;      // hyperbolic (|trace| > 2), axis = (att, rep)
  std::string word;   // generator word of the holonomy

  std::string key() const;  // unordered endpoint key
  bool same_axis(const Geodesic& o) const;
};

// Axis of a matrix; throws std::invalid_argument unless |trace| > 2.
Geodesic axis_of(const Mat2& m, const std::string& word = "");
// Axis of word_to_matrix(word).
Geodesic geodesic_from_word(const std::string& word);

// g applied to the geodesic: endpoints moved, holonomy conjugated.
Geodesic transport(const Mat2& g, const Geodesic& gamma);

// Strict interleaving of the endpoint pairs on the circle.  A shared
// endpoint reports false and sets *shared; this cannot happen between a
// pattern geodesic and a tiling edge (geodesic endpoints are irrational).
bool crosses(const Geodesic& g, const TileEdge& e, bool* shared = nullptr);

// A group-invariant family of geodesics, presented by one hyperbolic seed
// word per orbit.
struct Pattern {
  std::vector<Geodesic> seeds;
};
Pattern pattern_from_words(const std::vector<std::string>& words);

// Enumeration receipt for one seed at one edge: the seed axis crosses a
// bi-infinite chain of tiling edges which its holonomy translates by
// `period` steps, so period many chain edges (two edge-preserving maps
// each) exhaust the orbit members crossing any given edge.
struct ChainCertificate {
  int period = 0;
  int candidates = 0;
  bool converged = false;
};

// The crossing-chain walk exceeded MCQ_MAX_CHAIN_STEPS (default 100000)
// before closing up; no partial answer is returned.
struct IncompleteEnumeration : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// All geodesics in the PSL2(Z)-orbit of `seed` crossing edge e, in chain
// order, deduplicated by axis.  Complete: any orbit member crossing e maps
// e back onto a chain edge, hence appears among the candidates.
std::vector<Geodesic> orbit_enumerate(const Geodesic& seed, const TileEdge& e,
                                      ChainCertificate* cert = nullptr);

// Crossing set of an edge: its two endpoints plus every pattern geodesic
// crossing it.  Geodesics are ordered by the exact crossing position along
// the edge, from the b-endpoint toward the a-endpoint (ties by transported
// endpoint, then by key).
struct GammaE {
  TileEdge edge;
  std::vector<Geodesic> geodesics;
  std::vector<ChainCertificate> certs;  // one per pattern seed
  int cardinality() const { return 2 + static_cast<int>(geodesics.size()); }
  int n() const { return static_cast<int>(geodesics.size()) + 1; }
};
GammaE gamma_e(const Pattern& P, const TileEdge& e);

// n = crossing count + 1, the same for every edge; the crossing count must
// come out even (n odd), else this throws with a diagnostic.
int pattern_order(const Pattern& P);

using TauObject = std::variant<ProjRational, Geodesic>;
std::string tau_object_key(const TauObject& o);
TauObject tau_transport(const Mat2& g, const TauObject& o);

// Crossing set of a triangle: union of the crossing sets of its three
// edges, acted on by the order-3 rotation.  3k objects in k rotation
// orbits, where 2k = |Gamma_e|.
struct GammaTau {
  std::array<ProjRational, 3> verts;         // ccw
  Mat2 rotation;                             // vertex rotation, order 3
  std::vector<TauObject> objects;            // vertices first, then by key
  std::vector<std::array<int, 3>> orbits;    // index triples {i, r(i), r^2(i)}
  int k() const { return static_cast<int>(objects.size()) / 3; }
};
GammaTau gamma_tau(const Pattern& P, const ProjRational& v0,
                   const ProjRational& v1, const ProjRational& v2);

// Number of 2k-element subsets of the triangle's crossing set that contain
// no full rotation orbit and are not stabilized by any order-2 element
// (equivalently, by any of the three edge involutions of the triangle).
int abstract_simplex_count(const Pattern& P, const ProjRational& v0,
                           const ProjRational& v1, const ProjRational& v2);

}  // namespace mcq
