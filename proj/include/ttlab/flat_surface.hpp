#pragma once

#include <string>
#include <vector>

#include "ttlab/rational.hpp"
#include "ttlab/ribbon.hpp"
#include "ttlab/topology.hpp"

namespace ttlab {

/// Completely horizontally periodic half-translation surface assembled from one
/// horizontal cylinder per curve, glued along the ribbon-graph spines of the pieces.
///
/// Cylinder i has its side-A face along the bottom (traversed in the +x direction) and its
/// side-B face along the top (traversed in the -x direction). The twist is the x-position
/// of the top face's marked corner measured from the bottom face's marked corner, so a
/// point at arc position u on the top face sits at x = twist - u.
///
/// Spine lengths are stored at their construction scale; `scale_x` multiplies every
/// horizontal length and is changed only by the geodesic flow. `scale_y` tracks the
/// matching vertical factor so that scale_x * scale_y stays 1.
template <class Scalar>
struct BasicFlatSurface {
  MulticurveConfig config;
  SpineAssignment spines;
  std::vector<Rational> base_circumferences;
  Scalar scale_x = Scalar(1);
  Scalar scale_y = Scalar(1);
  std::vector<Scalar> heights;
  std::vector<Scalar> twists;

  int num_cylinders() const { return config.num_curves(); }
  Scalar circumference(int curve) const;
  Scalar edge_length(int piece, int edge) const;
  /// Position along its face at which half-edge h of the given piece starts.
  Scalar face_offset(int piece, int half_edge) const;
};

using ExactSurface = BasicFlatSurface<Rational>;
using NumericSurface = BasicFlatSurface<double>;

/// Builds the surface; heights must be positive. With `normalize`, heights are rescaled so
/// that the area sum of circumference * height is 1. Twists are reduced mod circumference.
ExactSurface build_surface(const MulticurveConfig& cfg, const SpineAssignment& sa, std::vector<Rational> heights,
                           std::vector<Rational> twists, bool normalize);

NumericSurface to_numeric(const ExactSurface& q);

template <class Scalar>
Scalar area(const BasicFlatSurface<Scalar>& q);

/// Exact geodesic flow by the rational factor lambda = e^t.
ExactSurface geodesic_flow(const ExactSurface& q, const Rational& lambda);
NumericSurface geodesic_flow(const NumericSurface& q, double t);

template <class Scalar>
BasicFlatSurface<Scalar> horocycle_flow(const BasicFlatSurface<Scalar>& q, const Scalar& s);

/// Shears only cylinder `curve`; throws BadIndex for an unknown curve.
template <class Scalar>
BasicFlatSurface<Scalar> cylinder_twist(const BasicFlatSurface<Scalar>& q, int curve, const Scalar& s);

template <class Scalar>
struct PeriodData {
  struct Entry {
    int piece = -1;  // -1 for cylinder crossings
    int index = 0;   // edge index, or curve index for crossings
    Scalar x, y;
  };
  std::vector<Entry> edges;
  std::vector<Entry> crossings;
};

/// Holonomy of every ribbon edge (horizontal) and of one crossing saddle connection per
/// cylinder, from the bottom marked corner to the top marked corner.
template <class Scalar>
PeriodData<Scalar> horizontal_period_data(const BasicFlatSurface<Scalar>& q);

/// True iff a cell relabeling carries one surface onto the other, matching lengths, heights
/// and twists (exactly for ExactSurface, within 1e-9 for NumericSurface).
template <class Scalar>
bool is_isomorphic(const BasicFlatSurface<Scalar>& a, const BasicFlatSurface<Scalar>& b);

/// A cone point on the surface: (piece, vertex).
struct ConePoint {
  int piece = 0;
  int vertex = 0;
  auto operator<=>(const ConePoint&) const = default;
};

struct SaddleConnection {
  double x = 0.0;  // holonomy, normalised so y > 0 or (y == 0 and x > 0)
  double y = 0.0;
  ConePoint start, end;
  /// Corner at each end: (piece, half-edge) of the face corner the segment leaves from.
  std::pair<int, int> start_corner{-1, -1}, end_corner{-1, -1};
  /// Cylinders crossed in order; empty for horizontal connections (ribbon edges).
  std::vector<int> crossings;
  /// For horizontal connections: (piece, edge).
  std::pair<int, int> edge{-1, -1};

  double length() const;
};

struct SaddleSearchResult {
  std::vector<SaddleConnection> connections;  // sorted by length
  bool complete = true;
  long unfolded = 0;  // cylinder passages explored
};

/// All saddle connections of length <= radius, found by unfolding straight trajectories
/// through the cylinder decomposition. `cap` bounds cylinder passages; hitting it clears
/// `complete`. Throws RadiusTooSmall for radius <= 0.
SaddleSearchResult saddle_connections_up_to(const NumericSurface& q, double radius, long cap);

}  // namespace ttlab
