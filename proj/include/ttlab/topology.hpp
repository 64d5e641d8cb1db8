#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace ttlab {

/// A boundary slot of a complement piece: (piece index, slot index).
struct SlotRef {
  int piece = 0;
  int slot = 0;
  auto operator<=>(const SlotRef&) const = default;
};

/// One component of S minus the multicurve: genus and number of boundary slots.
struct ComplementPiece {
  int genus = 0;
  int slots = 0;
  bool operator==(const ComplementPiece&) const = default;

  int euler_characteristic() const { return 2 - 2 * genus - slots; }
};

/// The two sides of the annulus removed around a curve. Side A carries the bottom of the
/// horizontal cylinder and side B its top.
struct CurveGluing {
  SlotRef side_a;
  SlotRef side_b;
  bool operator==(const CurveGluing&) const = default;
};

/// Combinatorial datum of a multicurve on a closed genus-g surface.
struct MulticurveConfig {
  int genus = 0;
  std::vector<ComplementPiece> pieces;
  std::vector<CurveGluing> gluing;  // indexed by curve

  int num_curves() const { return static_cast<int>(gluing.size()); }
  int num_pieces() const { return static_cast<int>(pieces.size()); }
  bool operator==(const MulticurveConfig&) const = default;
};

enum class Violation {
  GenusTooSmall,
  EmptyPiece,
  DiskOrAnnulus,
  BadSlotRef,
  UnmatchedSlot,
  SlotGluedTwice,
  EulerMismatch,
  SlotCountMismatch,
  Disconnected,
};

const char* to_string(Violation v);

struct ViolationEntry {
  Violation kind;
  std::vector<int> indices;
  std::string message;
};

struct ValidationReport {
  std::vector<ViolationEntry> entries;

  bool ok() const { return entries.empty(); }
  bool has(Violation v) const;
  void add(Violation v, std::vector<int> indices, std::string message);
};

/// Audits every structural invariant; violations are data in the report.
ValidationReport validate_config(const MulticurveConfig& cfg);

/// Throws Error(InvalidConfig) listing the first violation when cfg is not valid.
void require_valid(const MulticurveConfig& cfg);

/// True iff every piece is a pair of pants (genus 0, three slots).
bool is_pants_decomposition(const MulticurveConfig& cfg);

/// For each piece and slot, the curve glued there and whether it is side A.
struct SlotUse {
  int curve = -1;
  bool side_a = false;
};
std::vector<std::vector<SlotUse>> slot_table(const MulticurveConfig& cfg);

/// Piece adjacency with multiplicities; loops count once per curve on the diagonal.
std::vector<std::vector<int>> piece_adjacency(const MulticurveConfig& cfg);

/// Canonical isomorphism key: the lexicographically least labelled adjacency data over
/// piece relabelings. Slot order inside a piece and curve order do not matter.
std::vector<int> canonical_key(const MulticurveConfig& cfg);

/// Rebuilds a config from a piece adjacency matrix; slots and curves are assigned in
/// row-major order so the result is deterministic.
MulticurveConfig config_from_adjacency(int genus, const std::vector<ComplementPiece>& pieces,
                                       const std::vector<std::vector<int>>& adjacency);

/// All pants decompositions of a genus-g surface up to relabeling, 2 <= g <= 5.
/// Every output is already in canonical form; order is by canonical key.
std::vector<MulticurveConfig> enumerate_pants_configs(int genus);

/// Returns cfg in canonical form (config_from_adjacency of the canonical relabeling).
MulticurveConfig canonicalize(const MulticurveConfig& cfg);

}  // namespace ttlab
