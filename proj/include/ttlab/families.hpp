#pragma once

#include <vector>

#include "ttlab/rational.hpp"
#include "ttlab/ribbon.hpp"
#include "ttlab/topology.hpp"

namespace ttlab {

/// Spines for a pants decomposition with curve lengths `lengths`, one pants_spine per
/// piece. Throws NotPants or NonPositiveLength.
SpineAssignment pants_assignment(const MulticurveConfig& cfg, const std::vector<Rational>& lengths);

/// Boundary length triple of each pants piece, in slot order.
std::vector<std::array<Rational, 3>> pants_triples(const MulticurveConfig& cfg, const std::vector<Rational>& lengths);

/// Pieces whose boundary triple has one length equal to the sum of the other two.
int nabla_count(const MulticurveConfig& cfg, const std::vector<Rational>& lengths);

/// Plumbing fixtures X(p_1, ..., p_k) glued along the given curves; piece k is a sphere
/// with p_k slots and face s of its fixture sits at slot s. All faces have perimeter L.
struct PlumbingData {
  MulticurveConfig config;
  SpineAssignment spines;
};

PlumbingData plumbing_surface(const std::vector<int>& valences, const std::vector<CurveGluing>& gluing,
                              const Rational& boundary_length);

}  // namespace ttlab
