#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "mcq/modblocks.hpp"
#include "mcq/netbuild.hpp"

namespace mcq {

// Terminal entry of a weighted network: the free separator boundary sitting
// at a tessellation edge, waiting for (or holding) the block on the far
// side.  Vertices carry both their object label and the pair key
// "label|edgekey" naming this particular copy of the labelled vertex.
struct MEntry {
  TileEdge edge;
  int level{0};
  int chart{0};
  std::string parent;  // addr of the block whose separator this is
  int terminal{0};     // 0 = first inner, 1 = second inner, 2 = outer
  std::vector<Vec> verts;
  std::vector<TauObject> objects;
  std::vector<std::string> labels;
  std::vector<std::string> pair_keys;
  Rational diam_sq{0};
};

// One placed weighted block.  The placement is linear on chart coordinates
// and carries the block's free outer boundary onto the hole it plugs, so
// everything the block owns lands inside that hole.
struct MBlockInstance {
  std::string addr;  // "t+" for the base block, else the plugged edge addr
  int level{0};
  std::array<ProjRational, 3> tri;  // ccw
  int chart{0};
  int proto{0};  // index into ModifiedNetwork::protos
  Mat placement;
  Mat placement_inv;
  Rational det_abs{1};
  std::vector<Rational> wts;            // weight per model vertex id
  std::vector<TauObject> label_of;      // model vertex id -> object
  std::vector<std::string> label_keys;  // parallel
  std::map<std::string, int> label_index;
};

// The weighted analogue of Network: same combinatorial tree, but every
// block is first rebuilt around its weight vector (core warped, separators
// attached) before being placed.  Blocks with equal weight vectors share
// one prototype geometry.  Vertices are tracked per (label, edge) pair:
// copies of a labelled vertex from adjacent blocks coincide exactly when
// the label's weight is 1.
struct ModifiedNetwork {
  Pattern pattern;
  Weighting f;
  int k{0};
  int depth{0};
  ModularBlock model;
  std::vector<ModifiedBlock> protos;
  std::map<std::string, int> proto_index;  // kind + weight vector -> index
  std::vector<MBlockInstance> blocks;      // base first, then level order
  std::map<std::string, int> block_by_addr;
  std::map<std::string, MEntry> entries;  // edge key, all levels <= depth
  std::vector<std::string> frontier;      // edge keys at level == depth
  std::map<std::string, Rational> weight_of;   // object key -> weight
  std::map<std::string, std::string> seed_of;  // geodesic key -> seed word
  std::map<std::string, ChartPoint> cloud;     // pair key -> position
  std::map<std::string, std::vector<std::string>> families;  // label -> pairs
  std::map<std::string, TauObject> objects;  // object key -> object
};

// Build over the same tree as build_network.  Weights resolve per object:
// cusps get 1, geodesics look up an explicit axis weight first, then the
// orbit weight of their seed, then the fallback.  All resolved weights must
// land in (0, 1].  The base block uses the two-chart construction (its
// outer collar hangs in the minus chart); every other block is general.
ModifiedNetwork build_modified_network(const Pattern& P, const Weighting& f,
                                       int depth);

// Entry at an edge within the built depth; std::out_of_range beyond it.
const MEntry& psi_mod(const ModifiedNetwork& N, const TileEdge& e);

// The labelled vertex cloud.  `points` holds every (label, edge) copy;
// `families` groups the copies of one label; `merged` keeps one point per
// weight-one label (whose copies all coincide).
struct LimitSetF {
  std::map<std::string, ChartPoint> points;
  std::map<std::string, std::vector<std::string>> families;
  std::map<std::string, ChartPoint> merged;
};
LimitSetF limit_set_f(const ModifiedNetwork& N);

// Action of a group word on labelled vertices: (label, edge) maps to
// (transported label, transported edge).  Returns the image pair key.
// Throws DepthError when the image edge is outside the built region and
// std::domain_error for an unknown pair key.
std::string rho_f_vertex(const ModifiedNetwork& N, const std::string& word,
                         const std::string& pair_key);

struct ModifiedAuditOptions {
  int relation_samples{24};  // vertex pairs probed per relation word
};

// Exact audits: weight ranges, separator shells and volumes, the per-chart
// volume partition, terminal sharing and hole nesting, disjointness of
// unrelated blocks, the separation principle on the vertex cloud, rotation
// naturality on symmetrically weighted blocks, vertex transport relations,
// and collapse to the unweighted network when every weight is 1.
NetworkReport verify_modified_network(const ModifiedNetwork& N,
                                      const ModifiedAuditOptions& opts = {});

// Coordinate inclusion of the order-k1 chart into the order-k2 chart:
// basis slot j of one letter goes to basis slot j of the same letter.  The
// image of a chart simplex is a face, and squared distances are preserved.
struct NaturalEmbedding {
  int k1{1};
  int k2{2};
  Vec apply(const Vec& x) const;
  ChartPoint apply(const ChartPoint& p) const;
};
NaturalEmbedding natural_embed(int k1, int k2);  // requires 1 <= k1 < k2

// The circle as the double of a segment: chart coordinates (x0, x1) with
// x0 + x1 = 1, glued at the marked endpoints A = (1,0) and C = (0,1).  B is
// the midpoint of the plus chart.  sigma is order 3 (minus segment, then
// [A,B], then [B,C]); iota is the order-2 chart swap matching A with C.
struct StandardCircleRep {
  struct Piece {
    int chart_in{0};
    int chart_out{0};
    std::array<Vec, 2> dom;  // endpoints of the domain segment
    std::array<Vec, 2> img;  // their images, in order
  };
  Vec A, B, C;
  std::vector<Piece> sigma;
  std::vector<Piece> iota;
};
StandardCircleRep standard_rep();

// Piecewise action of a generator word on the glued segments, composed so
// that marked-point motion matches mobius(word_to_matrix(word), .).
ChartPoint rho0_apply(const StandardCircleRep& rep, const std::string& word,
                      const ChartPoint& p);

// Exact circle coordinates of a cusp: 1, inf, 0 sit at A, B, C, and every
// other cusp descends the nested far-arc tree, halving its segment at each
// completion vertex.
ChartPoint circle_position(const StandardCircleRep& rep,
                           const ProjRational& c);

// Weight sweep pulling one network onto the network of a sub-pattern.
// Weights over the sub-pattern's orbits hold at their target values while
// every other orbit gets 2^-m at step m.  For each entry edge and step the
// report carries the exact squared distance of every terminal vertex to
// its target: the embedded image of the matching sub-network vertex when
// the label survives, else the embedded barycenter of the target terminal.
// An empty sub-pattern degenerates onto the standard circle: cusps target
// their circle positions, geodesic labels target segment midpoints.
struct DegenerationReport {
  int k1{0}, k2{0};
  int steps{0}, depth{0};
  std::vector<Rational> eps;  // per step
  std::vector<std::string> edge_keys;
  std::vector<int> charts;                       // per edge
  std::vector<std::vector<std::string>> labels;  // per edge, per vertex
  std::vector<std::vector<bool>> surviving;
  std::vector<std::vector<Vec>> targets;
  // dist_sq[edge][step][vertex], exact.
  std::vector<std::vector<std::vector<Rational>>> dist_sq;
  std::vector<Rational> max_dist_sq;  // per step
  bool monotone{false};
};
DegenerationReport degenerate(const Pattern& big, const Pattern& sub,
                              const Weighting& target, int steps, int depth);
// Degeneration of every orbit at once; the target is the embedded circle.
DegenerationReport empty_pattern_limit(const Pattern& P, int steps,
                                       int depth);

// Weighting that is 1 on the selected geodesics and 1/2 on the rest of the
// pattern orbit, scoped to the geodesics visible in the depth-d network.
// The selection must name in-scope geodesics and be closed under the
// declared generators within that scope; violations throw
// std::invalid_argument.
Weighting theorem6_weighting(const Pattern& P,
                             const std::vector<std::string>& subgroup_gens,
                             const std::vector<std::string>& selected,
                             int depth);

}  // namespace mcq
