#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ttlab/linalg.hpp"
#include "ttlab/rational.hpp"
#include "ttlab/ribbon.hpp"
#include "ttlab/topology.hpp"

namespace ttlab {

/// Q(kappa; epsilon) on a genus-g surface. kappa is kept sorted ascending.
struct StratumLabel {
  int genus = 0;
  std::vector<int> kappa;
  int epsilon = -1;

  int odd_count() const;
  /// 2g - 2 + #kappa + [epsilon = +1].
  int dimension() const;
  bool principal() const;
  /// "Q(1^6,2;-1)" style.
  std::string to_string() const;
  bool operator==(const StratumLabel&) const = default;
};

/// Throws InvalidAssignment when sa does not fit cfg.
StratumLabel identify_stratum(const MulticurveConfig& cfg, const SpineAssignment& sa);

/// g + odd/4 + 1/2.
Rational high_rank_threshold(int genus, int odd);

enum class VerdictKind { FullStratumComponent, HyperellipticCandidate, Inconclusive };
const char* to_string(VerdictKind kind);

enum class SpinParity { Even, Odd };
const char* to_string(SpinParity parity);

struct Certificate {
  int rank_lb = 0;      // from the relations count
  int rank_matrix = 0;  // from the lifted classes in the double cover
  Rational threshold;   // quadratic criterion; g for abelian squares
  int n_co = 0;
  int delta_jo = 0;
  int nabla = -1;  // only for pants tori
};

struct OrbitClosureVerdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  StratumLabel stratum;
  Certificate certificate;
  std::string limit_label;
  std::vector<std::string> reasons;
  std::optional<SpinParity> spin;
  std::optional<bool> hyperelliptic;
};

/// Throws InvalidAssignment, or NonPositiveHeight for a non-positive height.
OrbitClosureVerdict classify_orbit_closure(const MulticurveConfig& cfg, const SpineAssignment& sa,
                                           const std::vector<Rational>& heights);

/// Builds pants spines from the curve lengths and classifies. Throws NotPants or
/// NonPositiveLength.
OrbitClosureVerdict classify_pants_torus(const MulticurveConfig& cfg, const std::vector<Rational>& lengths,
                                         const std::vector<Rational>& heights);

/// A symmetry of the presentation: piece permutation plus half-edge maps.
struct PresentationInvolution {
  std::vector<int> piece_map;
  std::vector<std::vector<int>> half_edge_map;  // [piece][h] -> half-edge of piece_map[piece]
  int fixed_points = 0;
};

/// Searches for an orientation-preserving involution of the spine data that carries the
/// bottom face of every cylinder onto its top face, with 2g + 2 fixed points. Throws
/// SearchBudgetExceeded once `budget` partial maps have been tried.
std::optional<PresentationInvolution> hyperelliptic_involution_search(const MulticurveConfig& cfg,
                                                                      const SpineAssignment& sa,
                                                                      long budget = 1'000'000);

/// Values of q(c) = wind(c) + 1 mod 2 on a spanning family of H_1(S; Z/2), with the mod-2
/// intersection matrix of the family.
struct WindingForm {
  std::vector<uint8_t> q;
  BitMatrix intersections;
  int cores = 0;  // the first `cores` entries are cylinder core curves
};

/// Family: every core curve, plus upward transversal loops through the cylinders. The
/// loops are taken in an order shuffled by `basis_seed` so that different seeds give
/// different generating sets. Throws NotAbelianSquare unless jointly orientable.
WindingForm winding_form(const MulticurveConfig& cfg, const SpineAssignment& sa, unsigned basis_seed = 0);

/// Arf invariant by symplectic reduction; throws InvalidSurface if q does not vanish on the
/// radical of the intersection matrix.
int arf_invariant(const WindingForm& form);

/// Jointly orientable with every zero order divisible by 4, so that the square root has
/// zeros of even order only.
bool spin_defined(const MulticurveConfig& cfg, const SpineAssignment& sa);

/// Throws NotAbelianSquare when not jointly orientable and BadPartition when a zero of the
/// square root has odd order.
SpinParity spin_parity(const MulticurveConfig& cfg, const SpineAssignment& sa, unsigned basis_seed = 0);

}  // namespace ttlab
