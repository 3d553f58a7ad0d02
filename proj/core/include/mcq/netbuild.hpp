#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcq/blockcore.hpp"
#include "mcq/geometry.hpp"
#include "mcq/pattern.hpp"

namespace mcq {

// The ambient sphere is the double of the standard simplex of R^{2k}: two
// charts glued pointwise along their boundaries.  A point is a chart flag
// plus simplex coordinates (nonnegative, sum 1); boundary points (some
// coordinate zero) canonicalize to the plus chart.
struct ChartPoint {
  int chart{0};  // 0 = plus, 1 = minus
  Vec x;
};
ChartPoint chart_canonical(const ChartPoint& p);
bool chart_point_eq(const ChartPoint& a, const ChartPoint& b);
std::string chart_point_key(const ChartPoint& p);  // canonical, map-usable

// The labelled simplex assigned to a tessellation edge: the hole plugged by
// the triangle on the edge's far side.  Vertices and object labels run in
// parallel; every entry lives inside a single chart.
struct PsiEntry {
  TileEdge edge;
  int level{0};
  int chart{0};
  std::vector<Vec> verts;           // 2k vertices
  std::vector<TauObject> objects;   // parallel labels
  std::vector<std::string> labels;  // tau_object_key of each object
  Rational diam_sq{0};
};

// One placed block: the triangle it realizes, the affine placement of the
// model block (columns of `placement` are the images of the 2k ambient
// vertices), and the labelling of its 3k vertices by model vertex id.
struct BlockInstance {
  std::string addr;  // "t+" for the base triangle, else the plugged edge addr
  int level{0};      // base = 0; a block plugging a level-m edge has m + 1
  std::array<ProjRational, 3> tri;  // ccw
  int chart{0};
  Mat placement;
  Mat placement_inv;
  Rational det_abs{1};
  std::vector<TauObject> label_of;      // model vertex id -> object
  std::vector<std::string> label_keys;  // parallel
  std::map<std::string, int> label_index;
};

struct Network {
  Pattern pattern;
  int k{0};
  int depth{0};
  ModularBlock model;
  std::vector<BlockInstance> blocks;  // base block first, then level order
  std::map<std::string, int> block_by_addr;
  std::map<std::string, int> block_by_tri;    // sorted-vertex key
  std::map<std::string, PsiEntry> entries;    // edge key, all levels <= depth
  std::vector<std::string> frontier;          // edge keys at level == depth
  std::map<std::string, ChartPoint> cloud;    // object label -> position
  std::map<std::string, TauObject> objects;   // object label -> object
};

// Inductive construction: the base block gets a deterministic labelling,
// every later block is the image of the model under the unique affine map
// matching labels on the hole it plugs.  Requires pattern order >= 3 (block
// size k >= 2); throws std::invalid_argument otherwise.
Network build_network(const Pattern& P, int depth);

// Simplex assigned to an edge within the built depth; std::out_of_range
// beyond it.
const PsiEntry& psi(const Network& N, const TileEdge& e);

// Limit point approximant: barycenter of the depth-m nested simplex around
// x, with the exact squared diameter as error bound.  Tessellation vertices
// built into the network resolve exactly (error 0).  If the requested depth
// exceeds the built depth the result is computed at the built depth and
// flagged partial.
struct PsiInfinityResult {
  ChartPoint point;
  Rational error_sq{0};
  bool exact{false};
  bool partial{false};
  int depth_used{0};
};
PsiInfinityResult psi_infinity(const Network& N, const CirclePt& x, int m);

// All labelled block vertices (the dense subset of the limit set).
const std::map<std::string, ChartPoint>& limit_cloud(const Network& N);
// The simplices over the level-m boundary edges, in address order.
std::vector<const PsiEntry*> lambda_m(const Network& N, int m);

// The piecewise data of rho(word) cannot be determined at the queried point
// with the built depth; deepen the network and retry.
struct DepthError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Evaluate the PL representation at a point: locate p in a placed block's
// core piece (or a frontier hole) and apply the affine piece matched by the
// labellings.  Throws DepthError when the image triangle or edge is beyond
// the built depth.
ChartPoint rho_apply(const Network& N, const std::string& word,
                     const ChartPoint& p);

// Materialized affine pieces of rho(word) over the built region.  `map` acts
// on chart coordinates (both charts use the same coordinate simplex).
struct RepPiece {
  int chart_in{0};
  int chart_out{0};
  std::vector<Vec> domain;  // 2k vertices of the domain simplex
  Mat map;
};
struct RepElement {
  std::string word;
  std::vector<RepPiece> pieces;
};
RepElement rho_pieces(const Network& N, const std::string& word);

struct NetworkCheck {
  std::string name;
  bool pass{false};
  std::string detail;
};
struct NetworkReport {
  bool pass{false};
  std::vector<NetworkCheck> checks;
};

struct NetworkAuditOptions {
  int minimality_words{6};     // max word length for the density probe
  int discontinuity_words{6};  // max word length for the return-set probe
};

// Exact audits of the network axioms and the simplicial-correspondence
// properties at the built depth, plus the two group-action probes.
NetworkReport verify_network(const Network& N,
                             const NetworkAuditOptions& opts = {});

}  // namespace mcq
