#include "ttlab/torus_file.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "ttlab/errors.hpp"

namespace ttlab {

const char* to_string(Mode mode) { return mode == Mode::Exact ? "exact" : "numeric"; }

Mode parse_mode(std::string_view text) {
  if (text == "exact") return Mode::Exact;
  if (text == "numeric") return Mode::Numeric;
  throw Error(ErrorCode::ParseError, "unknown mode '" + std::string(text) + "'");
}

bool AuditReport::has(std::string_view code) const {
  return std::any_of(issues.begin(), issues.end(), [&](const AuditIssue& i) { return i.code == code; });
}

namespace {

std::string trim(std::string_view s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return std::string(s.substr(a, b - a + 1));
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + msg);
}

int to_int(const std::string& s, int line) {
  try {
    size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) fail(line, "expected an integer, got '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    fail(line, "expected an integer, got '" + s + "'");
  }
}

Rational to_rational(const std::string& s, int line) {
  try {
    return parse_rational(s);
  } catch (const std::invalid_argument&) {
    fail(line, "expected a rational, got '" + s + "'");
  }
}

// "key = value" split; empty key on failure.
std::pair<std::string, std::string> key_value(const std::string& s) {
  size_t eq = s.find('=');
  if (eq == std::string::npos) return {"", ""};
  return {trim(s.substr(0, eq)), trim(s.substr(eq + 1))};
}

std::pair<std::string, int> slot_ref(const std::string& s, int line) {
  size_t dot = s.rfind('.');
  if (dot == std::string::npos || dot == 0) fail(line, "expected PIECE.SLOT, got '" + s + "'");
  return {s.substr(0, dot), to_int(s.substr(dot + 1), line)};
}

}  // namespace

TorusDocument parse_document(std::string_view text) {
  TorusDocument doc;
  std::string section;
  std::istringstream in{std::string(text)};
  int line_no = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "unterminated section header");
      auto parts = tokens(line.substr(1, line.size() - 2));
      if (parts.empty()) fail(line_no, "empty section header");
      section = parts[0];
      static const std::set<std::string> known{"surface", "curves", "pieces", "gluing", "ribbon", "heights", "twists", "options"};
      if (!known.count(section)) fail(line_no, "unknown section '" + section + "'");
      if (section == "ribbon") {
        if (parts.size() != 2) fail(line_no, "expected [ribbon PIECE]");
        doc.ribbons.push_back({parts[1], {}, {}, {}, line_no});
      } else if (parts.size() != 1) {
        fail(line_no, "unexpected text in section header");
      }
      continue;
    }
    if (section.empty()) fail(line_no, "content before the first section");

    if (section == "surface") {
      auto [k, v] = key_value(line);
      if (k != "genus") fail(line_no, "expected 'genus = N'");
      doc.genus = to_int(v, line_no);
    } else if (section == "curves") {
      for (auto& t : tokens(line)) doc.curves.push_back(t);
    } else if (section == "pieces") {
      auto parts = tokens(line);
      if (parts.size() != 3 || parts[1].rfind("genus=", 0) != 0 || parts[2].rfind("slots=", 0) != 0)
        fail(line_no, "expected 'NAME genus=G slots=B'");
      doc.pieces.push_back({parts[0], to_int(parts[1].substr(6), line_no), to_int(parts[2].substr(6), line_no)});
    } else if (section == "gluing") {
      auto [k, v] = key_value(line);
      auto sides = tokens(v);
      if (k.empty() || sides.size() != 2) fail(line_no, "expected 'CURVE = PIECE.SLOT PIECE.SLOT'");
      auto [pa, sa] = slot_ref(sides[0], line_no);
      auto [pb, sb] = slot_ref(sides[1], line_no);
      doc.gluing.push_back({k, pa, pb, sa, sb, line_no});
    } else if (section == "ribbon") {
      auto& rib = doc.ribbons.back();
      size_t colon = line.find(':');
      if (colon == std::string::npos) fail(line_no, "expected 'vertex:', 'edge:' or 'face->slot:'");
      std::string kind = trim(line.substr(0, colon));
      auto parts = tokens(line.substr(colon + 1));
      if (kind == "vertex") {
        if (parts.empty()) fail(line_no, "empty vertex");
        std::vector<int> cycle;
        for (auto& p : parts) cycle.push_back(to_int(p, line_no));
        rib.vertices.push_back(std::move(cycle));
      } else if (kind == "edge") {
        if (parts.size() != 4 || parts[2] != "length") fail(line_no, "expected 'edge: hi hj length L'");
        TorusDocument::Edge e{to_int(parts[0], line_no), to_int(parts[1], line_no), std::nullopt, line_no};
        if (parts[3] != "?") e.length = to_rational(parts[3], line_no);
        rib.edges.push_back(e);
      } else if (kind == "face->slot") {
        if (parts.size() != 2) fail(line_no, "expected 'face->slot: f s'");
        rib.face_slot.emplace_back(to_int(parts[0], line_no), to_int(parts[1], line_no));
      } else {
        fail(line_no, "unknown ribbon entry '" + kind + "'");
      }
    } else if (section == "heights" || section == "twists") {
      auto [k, v] = key_value(line);
      if (k.empty()) fail(line_no, "expected 'CURVE = value'");
      (section == "heights" ? doc.heights : doc.twists).emplace_back(k, to_rational(v, line_no));
    } else if (section == "options") {
      auto [k, v] = key_value(line);
      if (k == "normalize") {
        if (v != "true" && v != "false") fail(line_no, "normalize must be true or false");
        doc.normalize = v == "true";
      } else if (k == "mode") {
        try {
          doc.mode = parse_mode(v);
        } catch (const Error&) {
          fail(line_no, "mode must be exact or numeric");
        }
      } else if (k == "scale") {
        doc.scale = to_rational(v, line_no);
      } else {
        fail(line_no, "unknown option '" + k + "'");
      }
    }
  }
  return doc;
}

namespace {

// Everything audit and resolve share: names resolved, config built, graphs with unknown
// lengths set to 1.
struct Draft {
  AuditReport report;
  TorusSpec spec;
  std::vector<std::vector<int>> unknown_edges;  // [piece] -> edge indices with "?" length
  bool config_ok = false;
  bool ribbons_ok = false;
};

void issue(Draft& d, std::string code, std::string msg) { d.report.issues.push_back({std::move(code), std::move(msg)}); }

// Solves the perimeter equations for the unknown lengths, in place.
void solve_lengths(Draft& d, const std::vector<std::string>& mismatches) {
  auto& spec = d.spec;
  std::vector<std::pair<int, int>> vars;
  std::map<std::pair<int, int>, int> var_index;
  for (int j = 0; j < spec.config.num_pieces(); ++j)
    for (int e : d.unknown_edges[j]) {
      var_index[{j, e}] = static_cast<int>(vars.size());
      vars.emplace_back(j, e);
    }
  const int nv = static_cast<int>(vars.size());

  // Row i: sum over face A minus face B; unknowns on the left, known lengths on the right.
  std::vector<std::vector<Rational>> rows;
  for (int i = 0; i < spec.config.num_curves(); ++i) {
    std::vector<Rational> row(nv + 1, 0);
    const auto& gl = spec.config.gluing[i];
    for (auto [slot, sign] : {std::pair{gl.side_a, 1}, std::pair{gl.side_b, -1}}) {
      const auto& g = spec.spines.spines[slot.piece];
      for (int h : g.faces()[face_at_slot(spec.spines, slot)].half_edges) {
        int e = g.edge_of(h);
        auto it = var_index.find({slot.piece, e});
        if (it != var_index.end()) row[it->second] += sign;
        else row[nv] -= sign * g.length(e);
      }
    }
    rows.push_back(std::move(row));
  }

  std::vector<int> pivot_of_row;
  int r = 0;
  for (int c = 0; c < nv && r < static_cast<int>(rows.size()); ++c) {
    int p = r;
    while (p < static_cast<int>(rows.size()) && rows[p][c] == 0) ++p;
    if (p == static_cast<int>(rows.size())) continue;
    std::swap(rows[p], rows[r]);
    Rational lead = rows[r][c];
    for (auto& x : rows[r]) x /= lead;
    for (int q = 0; q < static_cast<int>(rows.size()); ++q) {
      if (q == r || rows[q][c] == 0) continue;
      Rational f = rows[q][c];
      for (int k = 0; k <= nv; ++k) rows[q][k] -= f * rows[r][k];
    }
    pivot_of_row.push_back(c);
    ++r;
  }
  bool consistent = true;
  for (int q = r; q < static_cast<int>(rows.size()); ++q)
    if (rows[q][nv] != 0) consistent = false;
  if (!consistent) {
    if (nv == 0)
      for (const auto& m : mismatches) issue(d, "LengthMismatch", m);
    else
      issue(d, "LengthMismatch", "no choice of the unknown lengths gives glued faces equal perimeters");
    return;
  }

  std::vector<std::optional<Rational>> value(nv);
  for (int q = 0; q < r; ++q) {
    bool determined = true;
    for (int k = 0; k < nv; ++k)
      if (k != pivot_of_row[q] && rows[q][k] != 0) determined = false;
    if (determined) value[pivot_of_row[q]] = rows[q][nv];
  }
  bool complete = true;
  for (int k = 0; k < nv; ++k) {
    auto [j, e] = vars[k];
    const auto& edge = spec.spines.spines[j].edges()[e];
    std::string where = "edge " + std::to_string(edge.first) + " " + std::to_string(edge.second) + " of " + spec.piece_names[j];
    if (!value[k]) {
      issue(d, "UnderdeterminedLength", where + " is not fixed by the gluing conditions");
      complete = false;
    } else if (*value[k] <= 0) {
      issue(d, "ZeroLengthForced", where + " is forced to length " + format_rational(*value[k]));
      complete = false;
    }
  }
  if (!complete) return;

  for (int j = 0; j < spec.config.num_pieces(); ++j) {
    if (d.unknown_edges[j].empty()) continue;
    const auto& g = spec.spines.spines[j];
    std::vector<RibbonEdge> edges = g.edges();
    for (int e : d.unknown_edges[j]) edges[e].length = *value[var_index[{j, e}]];
    spec.spines.spines[j] = MetricRibbonGraph(g.vertex_cycles(), edges);
  }
}

Draft draft(const TorusDocument& doc) {
  Draft d;
  auto& spec = d.spec;
  spec.normalize = doc.normalize;
  spec.mode = doc.mode;
  spec.scale = doc.scale;
  if (!doc.genus) issue(d, "MissingGenus", "[surface] genus is required");
  spec.config.genus = doc.genus.value_or(0);

  std::map<std::string, int> curve_id, piece_id;
  for (const auto& c : doc.curves) {
    if (curve_id.count(c)) issue(d, "DuplicateName", "curve " + c + " declared twice");
    curve_id.emplace(c, static_cast<int>(spec.curve_names.size()));
    spec.curve_names.push_back(c);
  }
  for (const auto& p : doc.pieces) {
    if (piece_id.count(p.name)) issue(d, "DuplicateName", "piece " + p.name + " declared twice");
    piece_id.emplace(p.name, static_cast<int>(spec.piece_names.size()));
    spec.piece_names.push_back(p.name);
    spec.config.pieces.push_back({p.genus, p.slots});
  }

  const int n = static_cast<int>(spec.curve_names.size());
  std::vector<std::optional<CurveGluing>> gluing(n);
  bool names_ok = true;
  for (const auto& g : doc.gluing) {
    auto c = curve_id.find(g.curve);
    auto pa = piece_id.find(g.piece_a), pb = piece_id.find(g.piece_b);
    if (c == curve_id.end() || pa == piece_id.end() || pb == piece_id.end()) {
      issue(d, "UnknownName", "line " + std::to_string(g.line) + ": unknown curve or piece");
      names_ok = false;
      continue;
    }
    if (gluing[c->second]) {
      issue(d, "DuplicateGluing", "curve " + g.curve + " glued twice");
      names_ok = false;
      continue;
    }
    gluing[c->second] = CurveGluing{{pa->second, g.slot_a}, {pb->second, g.slot_b}};
  }
  for (int i = 0; i < n; ++i) {
    if (!gluing[i]) {
      issue(d, "MissingGluing", "curve " + spec.curve_names[i] + " has no gluing");
      names_ok = false;
    } else {
      spec.config.gluing.push_back(*gluing[i]);
    }
  }
  if (names_ok) {
    auto report = validate_config(spec.config);
    for (const auto& v : report.entries) issue(d, to_string(v.kind), v.message);
    d.config_ok = report.ok() && doc.genus.has_value();
  }

  // Ribbons, in piece order.
  const int pieces = static_cast<int>(spec.piece_names.size());
  std::vector<const TorusDocument::Ribbon*> ribbon_of(pieces, nullptr);
  for (const auto& r : doc.ribbons) {
    auto it = piece_id.find(r.piece);
    if (it == piece_id.end()) {
      issue(d, "UnknownName", "line " + std::to_string(r.line) + ": ribbon for unknown piece " + r.piece);
      continue;
    }
    if (ribbon_of[it->second]) issue(d, "DuplicateRibbon", "piece " + r.piece + " has two ribbons");
    ribbon_of[it->second] = &r;
  }
  d.ribbons_ok = true;
  d.unknown_edges.resize(pieces);
  for (int j = 0; j < pieces; ++j) {
    const auto* r = ribbon_of[j];
    if (!r) {
      issue(d, "MissingRibbon", "piece " + spec.piece_names[j] + " has no ribbon");
      d.ribbons_ok = false;
      continue;
    }
    std::vector<RibbonEdge> edges;
    for (const auto& e : r->edges) {
      if (e.length && *e.length <= 0) {
        issue(d, "NonPositiveLength", "line " + std::to_string(e.line) + ": edge length must be positive");
        d.ribbons_ok = false;
      }
      if (!e.length) d.unknown_edges[j].push_back(static_cast<int>(edges.size()));
      edges.push_back({std::min(e.first, e.second), std::max(e.first, e.second), e.length && *e.length > 0 ? *e.length : Rational(1)});
    }
    try {
      spec.spines.spines.emplace_back(r->vertices, edges);
    } catch (const Error& err) {
      issue(d, "MalformedGraph", "piece " + spec.piece_names[j] + ": " + err.what());
      d.ribbons_ok = false;
      continue;
    }
    const auto& g = spec.spines.spines.back();
    // Edge indices may have been reordered by the constructor; map unknowns by half-edge.
    std::vector<int> unknown;
    for (int e : d.unknown_edges[j]) unknown.push_back(g.edge_of(edges[e].first));
    d.unknown_edges[j] = unknown;
    std::vector<int> face_to_slot(g.num_faces(), -1);
    for (auto [f, s] : r->face_slot) {
      if (f < 0 || f >= g.num_faces()) {
        issue(d, "FaceSlotNotBijective", "piece " + spec.piece_names[j] + ": no face " + std::to_string(f));
        d.ribbons_ok = false;
        continue;
      }
      face_to_slot[f] = s;
    }
    spec.spines.face_to_slot.push_back(std::move(face_to_slot));
  }

  if (d.config_ok && d.ribbons_ok) {
    auto report = validate_assignment(spec.config, spec.spines);
    bool structural = true;
    std::vector<std::string> mismatches;
    for (const auto& [kind, msg] : report.issues) {
      if (kind == AssignmentIssue::LengthMismatch) {
        mismatches.push_back(msg);
        continue;
      }
      issue(d, to_string(kind), msg);
      structural = false;
    }
    if (structural) solve_lengths(d, mismatches);
  }

  std::vector<std::optional<Rational>> heights(n), twists(n);
  for (auto [section, list, target] : {std::tuple{"heights", &doc.heights, &heights}, std::tuple{"twists", &doc.twists, &twists}}) {
    for (const auto& [name, value] : *list) {
      auto it = curve_id.find(name);
      if (it == curve_id.end()) {
        issue(d, "UnknownName", std::string(section) + ": unknown curve " + name);
        continue;
      }
      if ((*target)[it->second]) issue(d, "DuplicateValue", std::string(section) + ": curve " + name + " given twice");
      (*target)[it->second] = value;
    }
  }
  for (int i = 0; i < n; ++i) {
    if (!heights[i]) {
      issue(d, "MissingHeight", "curve " + spec.curve_names[i] + " has no height");
    } else if (*heights[i] <= 0) {
      issue(d, "NonPositiveHeight", "curve " + spec.curve_names[i] + " has non-positive height");
    }
    spec.heights.push_back(heights[i].value_or(Rational(1)));
    spec.twists.push_back(twists[i].value_or(Rational(0)));
  }
  if (spec.scale <= 0) issue(d, "NonPositiveLength", "scale must be positive");
  if (spec.mode == Mode::Exact && spec.scale != 1) issue(d, "ModeMismatch", "scale is only meaningful in numeric mode");
  return d;
}

ErrorCode code_for(const std::string& code) {
  static const std::set<std::string> config_codes{"MissingGenus", "DuplicateName", "UnknownName", "DuplicateGluing", "MissingGluing",
                                                  "GenusTooSmall", "EmptyPiece", "DiskOrAnnulus", "BadSlotRef", "UnmatchedSlot",
                                                  "SlotGluedTwice", "EulerMismatch", "SlotCountMismatch", "Disconnected"};
  if (config_codes.count(code)) return ErrorCode::InvalidConfig;
  if (code == "NonPositiveHeight" || code == "MissingHeight") return ErrorCode::NonPositiveHeight;
  if (code == "ModeMismatch") return ErrorCode::ModeMismatch;
  return ErrorCode::InvalidAssignment;
}

std::string fmt(const Rational& v, Mode mode) { return mode == Mode::Exact ? format_rational(v) : format_double(v.get_d()); }

}  // namespace

AuditReport audit(const TorusDocument& doc) { return draft(doc).report; }

TorusSpec resolve(const TorusDocument& doc) {
  Draft d = draft(doc);
  if (!d.report.ok()) {
    const auto& first = d.report.issues.front();
    throw Error(code_for(first.code), first.code + ": " + first.message);
  }
  return std::move(d.spec);
}

TorusSpec parse_torus(std::string_view text) { return resolve(parse_document(text)); }

std::string write_torus(const TorusSpec& spec) {
  std::ostringstream out;
  const auto& cfg = spec.config;
  out << "[surface]\ngenus = " << cfg.genus << "\n\n[curves]\n";
  for (const auto& c : spec.curve_names) out << c << "\n";
  out << "\n[pieces]\n";
  for (int j = 0; j < cfg.num_pieces(); ++j)
    out << spec.piece_names[j] << " genus=" << cfg.pieces[j].genus << " slots=" << cfg.pieces[j].slots << "\n";
  out << "\n[gluing]\n";
  for (int i = 0; i < cfg.num_curves(); ++i) {
    const auto& gl = cfg.gluing[i];
    out << spec.curve_names[i] << " = " << spec.piece_names[gl.side_a.piece] << "." << gl.side_a.slot << " "
        << spec.piece_names[gl.side_b.piece] << "." << gl.side_b.slot << "\n";
  }
  for (int j = 0; j < cfg.num_pieces(); ++j) {
    const auto& g = spec.spines.spines[j];
    out << "\n[ribbon " << spec.piece_names[j] << "]\n";
    for (const auto& cycle : g.vertex_cycles()) {
      out << "vertex:";
      for (int h : cycle) out << " " << h;
      out << "\n";
    }
    for (const auto& e : g.edges()) out << "edge: " << e.first << " " << e.second << " length " << format_rational(e.length) << "\n";
    for (int f = 0; f < g.num_faces(); ++f) out << "face->slot: " << f << " " << spec.spines.face_to_slot[j][f] << "\n";
  }
  out << "\n[heights]\n";
  for (int i = 0; i < cfg.num_curves(); ++i) out << spec.curve_names[i] << " = " << fmt(spec.heights[i], spec.mode) << "\n";
  out << "\n[twists]\n";
  for (int i = 0; i < cfg.num_curves(); ++i) out << spec.curve_names[i] << " = " << fmt(spec.twists[i], spec.mode) << "\n";
  out << "\n[options]\nnormalize = " << (spec.normalize ? "true" : "false") << "\nmode = " << to_string(spec.mode) << "\n";
  if (spec.scale != 1) out << "scale = " << fmt(spec.scale, spec.mode) << "\n";
  return out.str();
}

TorusSpec make_spec(const MulticurveConfig& cfg, const SpineAssignment& sa, std::vector<Rational> heights,
                    std::vector<Rational> twists, bool normalize) {
  require_valid(cfg, sa);
  TorusSpec spec;
  for (int i = 0; i < cfg.num_curves(); ++i) spec.curve_names.push_back("c" + std::to_string(i));
  for (int j = 0; j < cfg.num_pieces(); ++j) spec.piece_names.push_back("P" + std::to_string(j));
  spec.config = cfg;
  spec.spines = sa;
  if (twists.empty()) twists.assign(cfg.num_curves(), Rational(0));
  spec.heights = std::move(heights);
  spec.twists = std::move(twists);
  spec.normalize = normalize;
  return spec;
}

ExactSurface to_exact_surface(const TorusSpec& spec) {
  if (spec.scale != 1) throw Error(ErrorCode::ModeMismatch, "scaled numeric surface read in exact mode");
  return build_surface(spec.config, spec.spines, spec.heights, spec.twists, spec.normalize);
}

NumericSurface to_numeric_surface(const TorusSpec& spec) {
  NumericSurface q = to_numeric(build_surface(spec.config, spec.spines, spec.heights, {}, false));
  q.scale_x = spec.scale.get_d();
  q.scale_y = 1.0 / q.scale_x;
  if (spec.normalize) {
    double a = area(q);
    for (auto& h : q.heights) h /= a;
  }
  for (int i = 0; i < q.num_cylinders(); ++i) q.twists[i] = wrap(spec.twists[i].get_d(), q.circumference(i));
  return q;
}

TorusSpec from_surface(const ExactSurface& q, const TorusSpec& like) {
  TorusSpec spec = like;
  spec.config = q.config;
  spec.spines = q.spines;
  for (auto& g : spec.spines.spines) g = g.scaled(q.scale_x);
  spec.heights = q.heights;
  spec.twists = q.twists;
  spec.normalize = false;
  spec.mode = Mode::Exact;
  spec.scale = 1;
  return spec;
}

TorusSpec from_surface(const NumericSurface& q, const TorusSpec& like) {
  TorusSpec spec = like;
  spec.config = q.config;
  spec.spines = q.spines;
  spec.heights.clear();
  spec.twists.clear();
  for (double h : q.heights) spec.heights.emplace_back(h);
  for (double t : q.twists) spec.twists.emplace_back(t);
  spec.normalize = false;
  spec.mode = Mode::Numeric;
  spec.scale = Rational(q.scale_x);
  return spec;
}

}  // namespace ttlab
