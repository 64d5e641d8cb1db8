#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ttlab/rational.hpp"
#include "ttlab/topology.hpp"

namespace ttlab {

/// Parity-labelled union-find: each element carries a bit relative to its root.
class ParityUnionFind {
 public:
  explicit ParityUnionFind(int n);

  /// Root of x and the parity of x relative to that root.
  std::pair<int, int> find(int x);

  /// Imposes bit(a) xor bit(b) == parity. Returns false on contradiction.
  bool unite(int a, int b, int parity);

 private:
  std::vector<int> parent_;
  std::vector<int> parity_;
};

/// A boundary face: half-edges in traversal order starting from the least one, and the
/// perimeter. The first half-edge marks the face's reference corner.
struct BoundaryCycle {
  std::vector<int> half_edges;
  Rational perimeter;
};

struct RibbonEdge {
  int first = 0;   // smaller half-edge
  int second = 0;  // larger half-edge
  Rational length;
};

/// Half-edge ribbon graph with exact positive edge lengths.
///
/// Half-edges are 0..2E-1. The vertex permutation sigma lists the cyclic order at each
/// vertex and the involution iota pairs half-edges into edges. Boundary faces are the
/// orbits of sigma after iota, traversed so that half-edge h runs from the vertex of h to
/// the vertex of iota(h).
class MetricRibbonGraph {
 public:
  MetricRibbonGraph() = default;

  /// Throws MalformedGraph on inconsistent data and NonPositiveLength on lengths <= 0.
  MetricRibbonGraph(std::vector<std::vector<int>> vertex_cycles, std::vector<RibbonEdge> edges);

  int num_half_edges() const { return static_cast<int>(sigma_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_vertices() const { return static_cast<int>(vertex_cycles_.size()); }
  int num_faces() const { return static_cast<int>(faces_.size()); }

  int sigma(int h) const { return sigma_[h]; }
  int iota(int h) const { return iota_[h]; }
  int vertex_of(int h) const { return vertex_of_[h]; }
  int edge_of(int h) const { return edge_of_[h]; }
  /// Index of h inside the cyclic order of its vertex, counted from the vertex's first entry.
  int position_at_vertex(int h) const { return position_[h]; }
  int face_of(int h) const { return face_of_[h]; }
  /// Arc-length position where h starts along its face, measured from the marked corner.
  const Rational& face_offset(int h) const { return face_offset_[h]; }

  const Rational& length(int edge) const { return edges_[edge].length; }
  const Rational& half_edge_length(int h) const { return edges_[edge_of_[h]].length; }
  const std::vector<RibbonEdge>& edges() const { return edges_; }
  const std::vector<std::vector<int>>& vertex_cycles() const { return vertex_cycles_; }
  const std::vector<BoundaryCycle>& faces() const { return faces_; }

  int valence(int vertex) const { return static_cast<int>(vertex_cycles_[vertex].size()); }
  int num_components() const { return components_; }
  /// Genus of the thickened surface; requires a connected graph.
  int genus() const;

  Rational total_length() const;
  MetricRibbonGraph scaled(const Rational& factor) const;
  bool operator==(const MetricRibbonGraph& other) const;

 private:
  void build();

  std::vector<std::vector<int>> vertex_cycles_;
  std::vector<RibbonEdge> edges_;
  std::vector<int> sigma_, iota_, vertex_of_, edge_of_, position_, face_of_;
  std::vector<Rational> face_offset_;
  std::vector<BoundaryCycle> faces_;
  int components_ = 0;
};

std::vector<BoundaryCycle> boundary_cycles(const MetricRibbonGraph& g);

/// Zero orders valence-2 per vertex, in vertex order. Throws LowValence for valence <= 2.
std::vector<int> cone_orders(const MetricRibbonGraph& g);

/// Solvability of the sign system: opposite signs across every edge and between
/// consecutive half-edges at every vertex.
bool co_orientable(const MetricRibbonGraph& g);

/// Face 2-colouring witnessing co-orientability (bit per face), if one exists.
std::optional<std::vector<int>> face_coorientation(const MetricRibbonGraph& g);

/// One ribbon graph per complement piece plus the face -> slot bijection.
struct SpineAssignment {
  std::vector<MetricRibbonGraph> spines;
  std::vector<std::vector<int>> face_to_slot;  // [piece][face] -> slot

  bool operator==(const SpineAssignment&) const = default;
};

enum class AssignmentIssue {
  PieceCountMismatch,
  GraphDisconnected,
  GenusMismatch,
  FaceCountMismatch,
  FaceSlotNotBijective,
  LowValence,
  LengthMismatch,
};

const char* to_string(AssignmentIssue issue);

struct AssignmentReport {
  std::vector<std::pair<AssignmentIssue, std::string>> issues;
  bool ok() const { return issues.empty(); }
  bool has(AssignmentIssue issue) const;
};

AssignmentReport validate_assignment(const MulticurveConfig& cfg, const SpineAssignment& sa);

/// Throws InvalidAssignment (after InvalidConfig checks) on the first problem.
void require_valid(const MulticurveConfig& cfg, const SpineAssignment& sa);

/// Face index on piece `slot.piece` carrying the given slot.
int face_at_slot(const SpineAssignment& sa, const SlotRef& slot);

/// Circumference of each curve (common perimeter of its two glued faces).
std::vector<Rational> curve_lengths(const MulticurveConfig& cfg, const SpineAssignment& sa);

struct JointOrientation {
  bool jointly_orientable = false;
  int epsilon = -1;
  /// When jointly orientable: per piece, per face, 0 if the oriented horizontal field runs
  /// along the face traversal and 1 if against it.
  std::vector<std::vector<int>> face_bits;
  /// Per curve: 0 if the field points along +x of the cylinder chart, 1 if along -x.
  std::vector<int> cylinder_bits;
};

JointOrientation jointly_orientable(const SpineAssignment& sa, const MulticurveConfig& cfg);

enum class SpineKind { Theta, Nabla, Dumbbell };
const char* to_string(SpineKind kind);

struct PantsSpine {
  MetricRibbonGraph graph;
  SpineKind kind = SpineKind::Theta;
  /// face_of_boundary[k] is the face whose perimeter is the k-th input length.
  std::array<int, 3> face_of_boundary{};
  /// Boundary index of the long face for Nabla and Dumbbell spines, -1 for Theta.
  int long_boundary = -1;
};

/// The spine of a pair of pants with boundary lengths (a, b, c).
PantsSpine pants_spine(const Rational& a, const Rational& b, const Rational& c);

/// Two p-valent vertices joined by p edges of length L/2; p faces of perimeter L, face k
/// contains half-edge k.
MetricRibbonGraph plumbing_fixture(int p, const Rational& boundary_length);

/// One vertex with cyclic slots 0..valence-1; pairing[i] is the slot joined to i. Edges are
/// numbered by their smaller slot and take lengths in that order.
MetricRibbonGraph single_vertex_graph(int valence, const std::vector<int>& pairing,
                                      const std::vector<Rational>& lengths);

}  // namespace ttlab
