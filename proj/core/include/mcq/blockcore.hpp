#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mcq/geometry.hpp"
#include "mcq/rational.hpp"

namespace mcq {

// A block of size k lives in the standard simplex of R^{2k} (the hyperplane
// sum x = 1, coordinates >= 0).  Its 3k distinguished vertices come in k
// triples (A_j, B_j, C_j); the 2k-element subsets that pick two vertices out
// of every triple span the full-dimensional pieces.  Removing the three
// special subsets (all-AB, all-BC, all-CA) leaves the core pieces, whose
// union is the ambient simplex minus the interiors of the two inner ones.

enum class PairSel : unsigned char { AB = 0, BC = 1, CA = 2 };
using Selector = std::vector<PairSel>;

Selector selector_all(PairSel s, int k);
Selector sigma_selector(const Selector& s);  // AB -> BC -> CA -> AB
std::string selector_key(const Selector& s);
Selector selector_parse(const std::string& key);

struct ModularBlock {
  int k{2};
  std::vector<Vec> A, B, C;       // k vertices each, in R^{2k}
  std::vector<Selector> good;     // all two-per-triple subsets except all-CA
  std::vector<Selector> core;     // good minus all-AB and all-BC

  int n() const { return 2 * k - 1; }
  int dim() const { return 2 * k; }

  // Vertex ids: A_j = j, B_j = k + j, C_j = 2k + j.
  const Vec& vertex(int id) const;
  // Ids of the simplex spanned by a selector, two per triple, in (A,B,C)
  // letter order within each triple.
  std::vector<int> simplex_vertex_ids(const Selector& s) const;
  std::vector<Vec> simplex(const Selector& s) const;
};

ModularBlock build_block(int k);  // k >= 2

// Vertex rotation A_j -> B_j -> C_j -> A_j.
int sigma_vertex(int k, int id);

struct BlockCheck {
  std::string name;
  bool pass{false};
  std::string detail;
};

struct BlockReport {
  int k{0};
  std::string level;
  bool pass{false};
  std::vector<BlockCheck> checks;
  std::string to_json() const;
};

enum class VerifyLevel { Structural, Full };

// Structural level: vertex normalization, piece census, exact nondegeneracy
// of every piece against the closed-form determinant, rotation orbit shape.
// Full level adds the quadratic-cost exact checks: pairwise interior
// disjointness, pairwise intersection-equals-common-face, and the volume
// identity that certifies the core pieces tile the complement of the two
// inner simplices.
BlockReport verify_block(const ModularBlock& blk, VerifyLevel level);

// Locate p (chart coordinates) in a core piece: index into blk.core plus
// barycentric coordinates.  Faces shared between pieces return the first
// piece in core order.
struct CoreLocation {
  int core_index{-1};
  Vec lambda;
};
std::optional<CoreLocation> locate_in_core(const ModularBlock& blk, const Vec& p);

// The PL rotation of order three on the union of the core pieces; throws
// std::domain_error for points inside an inner simplex or outside the chart.
Vec sigma_apply(const ModularBlock& blk, const Vec& p);

// Orbits of the rotation on core piece indices; all have size three.
std::vector<std::array<int, 3>> sigma_core_orbits(const ModularBlock& blk);

// Indices of core pieces sharing a codimension-one face (selector Hamming
// distance one, both core).
std::vector<std::vector<int>> core_adjacency(const ModularBlock& blk);

}  // namespace mcq
