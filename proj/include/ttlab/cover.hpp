#pragma once

#include <vector>

#include "ttlab/flat_surface.hpp"
#include "ttlab/linalg.hpp"
#include "ttlab/rational.hpp"
#include "ttlab/ribbon.hpp"
#include "ttlab/topology.hpp"

namespace ttlab {

/// CW model of the orientation double cover of the horizontal line field.
///
/// Base complex: 0-cells are the spine vertices of all pieces; 1-cells are the ribbon edges
/// followed by one crossing edge per cylinder (bottom marked corner to top marked corner);
/// 2-cells are the cylinders cut open along their crossing edge.
///
/// Each base 1- or 2-cell b has two lifts 2b and 2b+1 (sheet 0 and 1). Sheet 0 of cylinder
/// i is the lift where the horizontal direction points along +x. Odd-valence vertices have
/// a single lift and are the branch points.
struct BranchedDoubleCover {
  MulticurveConfig config;
  SpineAssignment spines;

  std::vector<int> vertex_offset;  // per piece, into the base vertex list
  std::vector<int> edge_offset;    // per piece, into the base ribbon edge list
  int base_vertices = 0;
  int base_ribbon_edges = 0;
  int base_edges = 0;  // ribbon edges + crossings
  int base_faces = 0;

  std::vector<char> branch;                  // per base vertex
  std::vector<std::array<int, 2>> vertex_lift;  // cover vertex for each sheet
  int num_vertices = 0;
  int num_edges = 0;
  int num_faces = 0;

  IntMatrix d1;  // num_vertices x num_edges
  IntMatrix d2;  // num_edges x num_faces

  std::vector<int> iota0, iota1, iota2;  // deck involution on cells of each dimension
  std::vector<int> vertex_projection;

  int components = 0;
  /// Components of the preimage of each piece (1 or 2).
  std::vector<int> piece_preimage_components;

  bool connected() const { return components == 1; }
  int euler_characteristic() const { return num_vertices - num_edges + num_faces; }
  int num_branch_points() const;
};

BranchedDoubleCover holonomy_double_cover(const MulticurveConfig& cfg, const SpineAssignment& sa);

template <class Scalar>
BranchedDoubleCover holonomy_double_cover(const BasicFlatSurface<Scalar>& q) {
  return holonomy_double_cover(q.config, q.spines);
}

/// Genus of a connected cover; throws Disconnected otherwise.
int cover_genus(const BranchedDoubleCover& cover);

/// Genus of each connected component.
std::vector<int> component_genera(const BranchedDoubleCover& cover);

/// The anti-invariant chain complex (basis x_0 - x_1 per swapped cell) and its first homology.
struct AntiInvariantH1 {
  IntMatrix d1, d2;
  int rank_d1 = 0;
  int rank_d2 = 0;
  int dim = 0;
};

AntiInvariantH1 h1_anti_invariant(const BranchedDoubleCover& cover);

/// Which lift of each core curve to use: the bottom or top boundary of the cylinder, on
/// the given sheet.
struct LiftChoice {
  int sheet = 0;
  bool use_top = false;
};

/// One anti-invariant 1-cycle per curve, the class of a lifted core minus its deck image,
/// in the basis of base 1-cells. Throws NonLiftable if a result is not a cycle.
std::vector<std::vector<mpz_class>> lifted_curve_classes(const BranchedDoubleCover& cover, LiftChoice choice = {});

/// Dimension of the span of the lifted classes inside anti-invariant homology.
int rank_lower_bound(const BranchedDoubleCover& cover, LiftChoice choice = {});

/// Algebraic intersection of an anti-invariant 1-cycle with the lifted core of `curve` on
/// sheet 0 minus its image; only the crossing edges of that cylinder contribute.
mpz_class core_intersection(const BranchedDoubleCover& cover, const std::vector<mpz_class>& cycle, int curve);

/// Number of pieces whose spine is co-orientable.
int count_co_orientable(const SpineAssignment& sa);

/// #curves - #co-orientable pieces + [jointly orientable].
int relations_formula(const MulticurveConfig& cfg, const SpineAssignment& sa);

/// g for abelian squares, g + #odd/2 - 1 otherwise. Throws BadPartition unless the entries
/// are positive, sum to 4g-4 and are all even when epsilon is +1.
Rational stratum_rank(int genus, const std::vector<int>& kappa, int epsilon);

}  // namespace ttlab
