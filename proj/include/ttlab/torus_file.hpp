#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ttlab/flat_surface.hpp"
#include "ttlab/rational.hpp"
#include "ttlab/ribbon.hpp"
#include "ttlab/topology.hpp"

namespace ttlab {

enum class Mode { Exact, Numeric };
const char* to_string(Mode mode);
Mode parse_mode(std::string_view text);

/// Text form of a twist torus point, as written on disk.
///
///   [surface]   genus = g
///   [curves]    one curve name per line
///   [pieces]    NAME genus=G slots=B
///   [gluing]    CURVE = PIECE.SLOT PIECE.SLOT      (side A first)
///   [ribbon P]  vertex: h1 h2 ...  /  edge: hi hj length p/q  /  face->slot: f s
///   [heights]   CURVE = value
///   [twists]    CURVE = value                      (optional, default 0)
///   [options]   normalize = true|false, mode = exact|numeric, scale = value
///
/// Edge lengths may be given as "?" and are then solved from the gluing conditions.
/// Faces are numbered by their least half-edge. `scale` is the horizontal stretch of a
/// numeric-mode surface relative to its stored spine lengths.
struct TorusDocument {
  struct Piece {
    std::string name;
    int genus = 0;
    int slots = 0;
  };
  struct Gluing {
    std::string curve;
    std::string piece_a, piece_b;
    int slot_a = 0, slot_b = 0;
    int line = 0;
  };
  struct Edge {
    int first = 0, second = 0;
    std::optional<Rational> length;
    int line = 0;
  };
  struct Ribbon {
    std::string piece;
    std::vector<std::vector<int>> vertices;
    std::vector<Edge> edges;
    std::vector<std::pair<int, int>> face_slot;
    int line = 0;
  };

  std::optional<int> genus;
  std::vector<std::string> curves;
  std::vector<Piece> pieces;
  std::vector<Gluing> gluing;
  std::vector<Ribbon> ribbons;
  std::vector<std::pair<std::string, Rational>> heights;
  std::vector<std::pair<std::string, Rational>> twists;
  bool normalize = false;
  Mode mode = Mode::Exact;
  Rational scale = 1;
};

/// Syntax-level parse; throws ParseError naming the offending line.
TorusDocument parse_document(std::string_view text);

/// A resolved, validated twist torus point.
struct TorusSpec {
  std::vector<std::string> curve_names;
  std::vector<std::string> piece_names;
  MulticurveConfig config;
  SpineAssignment spines;
  std::vector<Rational> heights;
  std::vector<Rational> twists;
  bool normalize = false;
  Mode mode = Mode::Exact;
  Rational scale = 1;
};

struct AuditIssue {
  std::string code;  // e.g. "LengthMismatch", "ZeroLengthForced", "UnmatchedSlot"
  std::string message;
};

struct AuditReport {
  std::vector<AuditIssue> issues;
  bool ok() const { return issues.empty(); }
  bool has(std::string_view code) const;
};

/// Full invariant audit of a parsed document; problems are data in the report.
AuditReport audit(const TorusDocument& doc);

/// Resolves names and unknown lengths. Throws InvalidConfig, InvalidAssignment or
/// NonPositiveHeight with the first audit issue in the message.
TorusSpec resolve(const TorusDocument& doc);

TorusSpec parse_torus(std::string_view text);

/// Canonical text; parse_torus(write_torus(s)) writes back to the same bytes. Numeric-mode
/// values are printed with 12 significant digits.
std::string write_torus(const TorusSpec& spec);

/// Default names c0.. and P0.. .
TorusSpec make_spec(const MulticurveConfig& cfg, const SpineAssignment& sa, std::vector<Rational> heights,
                    std::vector<Rational> twists, bool normalize = false);

ExactSurface to_exact_surface(const TorusSpec& spec);
NumericSurface to_numeric_surface(const TorusSpec& spec);

/// Writes a surface back into a spec carrying the names and options of `like`. Exact
/// surfaces have their horizontal scale folded into the spine lengths.
TorusSpec from_surface(const ExactSurface& q, const TorusSpec& like);
TorusSpec from_surface(const NumericSurface& q, const TorusSpec& like);

}  // namespace ttlab
