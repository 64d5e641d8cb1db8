#include "ttlab/ribbon.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "ttlab/errors.hpp"

namespace ttlab {

ParityUnionFind::ParityUnionFind(int n) : parent_(n), parity_(n, 0) {
  std::iota(parent_.begin(), parent_.end(), 0);
}

std::pair<int, int> ParityUnionFind::find(int x) {
  int parity = 0;
  int root = x;
  while (parent_[root] != root) {
    parity ^= parity_[root];
    root = parent_[root];
  }
  // Path compression with parity bookkeeping.
  int p = parity;
  while (parent_[x] != x) {
    int next = parent_[x];
    int next_parity = p ^ parity_[x];
    parent_[x] = root;
    parity_[x] = p;
    x = next;
    p = next_parity;
  }
  return {root, parity};
}

bool ParityUnionFind::unite(int a, int b, int parity) {
  auto [ra, pa] = find(a);
  auto [rb, pb] = find(b);
  if (ra == rb) return (pa ^ pb) == parity;
  parent_[ra] = rb;
  parity_[ra] = pa ^ pb ^ parity;
  return true;
}

MetricRibbonGraph::MetricRibbonGraph(std::vector<std::vector<int>> vertex_cycles, std::vector<RibbonEdge> edges)
    : vertex_cycles_(std::move(vertex_cycles)), edges_(std::move(edges)) {
  build();
}

void MetricRibbonGraph::build() {
  const int n = 2 * static_cast<int>(edges_.size());
  if (n == 0) throw Error(ErrorCode::MalformedGraph, "graph has no edges");
  sigma_.assign(n, -1);
  iota_.assign(n, -1);
  vertex_of_.assign(n, -1);
  edge_of_.assign(n, -1);
  position_.assign(n, -1);

  for (int v = 0; v < num_vertices(); ++v) {
    const auto& cyc = vertex_cycles_[v];
    if (cyc.empty()) throw Error(ErrorCode::MalformedGraph, "empty vertex");
    for (size_t k = 0; k < cyc.size(); ++k) {
      int h = cyc[k];
      if (h < 0 || h >= n) throw Error(ErrorCode::MalformedGraph, "half-edge id out of range");
      if (vertex_of_[h] != -1) throw Error(ErrorCode::MalformedGraph, "half-edge listed at two vertex positions");
      vertex_of_[h] = v;
      position_[h] = static_cast<int>(k);
      sigma_[h] = cyc[(k + 1) % cyc.size()];
    }
  }
  for (int e = 0; e < num_edges(); ++e) {
    auto& ed = edges_[e];
    if (ed.first > ed.second) std::swap(ed.first, ed.second);
    if (ed.first == ed.second) throw Error(ErrorCode::MalformedGraph, "edge joins a half-edge to itself");
    if (ed.first < 0 || ed.second >= n) throw Error(ErrorCode::MalformedGraph, "edge half-edge out of range");
    if (iota_[ed.first] != -1 || iota_[ed.second] != -1)
      throw Error(ErrorCode::MalformedGraph, "half-edge used by two edges");
    if (ed.length <= 0) throw Error(ErrorCode::NonPositiveLength, "edge length must be positive");
    iota_[ed.first] = ed.second;
    iota_[ed.second] = ed.first;
    edge_of_[ed.first] = edge_of_[ed.second] = e;
  }
  for (int h = 0; h < n; ++h) {
    if (vertex_of_[h] == -1) throw Error(ErrorCode::MalformedGraph, "half-edge missing from every vertex");
  }

  face_of_.assign(n, -1);
  face_offset_.assign(n, Rational(0));
  faces_.clear();
  for (int h = 0; h < n; ++h) {
    if (face_of_[h] != -1) continue;
    BoundaryCycle face;
    face.perimeter = 0;
    int f = static_cast<int>(faces_.size());
    int x = h;
    do {
      face_of_[x] = f;
      face_offset_[x] = face.perimeter;
      face.half_edges.push_back(x);
      face.perimeter += edges_[edge_of_[x]].length;
      x = sigma_[iota_[x]];
    } while (x != h);
    faces_.push_back(std::move(face));
  }

  std::vector<int> parent(num_vertices());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : edges_) parent[find(vertex_of_[e.first])] = find(vertex_of_[e.second]);
  components_ = 0;
  for (int v = 0; v < num_vertices(); ++v)
    if (find(v) == v) ++components_;
}

int MetricRibbonGraph::genus() const {
  if (components_ != 1) throw Error(ErrorCode::MalformedGraph, "genus of a disconnected graph");
  int chi = num_vertices() - num_edges();
  return (2 - chi - num_faces()) / 2;
}

Rational MetricRibbonGraph::total_length() const {
  Rational sum = 0;
  for (const auto& e : edges_) sum += e.length;
  return sum;
}

MetricRibbonGraph MetricRibbonGraph::scaled(const Rational& factor) const {
  auto edges = edges_;
  for (auto& e : edges) e.length *= factor;
  return MetricRibbonGraph(vertex_cycles_, std::move(edges));
}

bool MetricRibbonGraph::operator==(const MetricRibbonGraph& other) const {
  if (vertex_cycles_ != other.vertex_cycles_ || edges_.size() != other.edges_.size()) return false;
  for (size_t e = 0; e < edges_.size(); ++e) {
    if (edges_[e].first != other.edges_[e].first || edges_[e].second != other.edges_[e].second ||
        edges_[e].length != other.edges_[e].length)
      return false;
  }
  return true;
}

std::vector<BoundaryCycle> boundary_cycles(const MetricRibbonGraph& g) { return g.faces(); }

std::vector<int> cone_orders(const MetricRibbonGraph& g) {
  std::vector<int> orders;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (g.valence(v) <= 2) throw Error(ErrorCode::LowValence, "vertex " + std::to_string(v) + " has valence <= 2");
    orders.push_back(g.valence(v) - 2);
  }
  return orders;
}

namespace {

// Sign per half-edge with odd constraints across edges and along sigma.
bool add_local_constraints(const MetricRibbonGraph& g, ParityUnionFind& uf, int base) {
  bool ok = true;
  for (int h = 0; h < g.num_half_edges(); ++h) {
    ok &= uf.unite(base + h, base + g.iota(h), 1);
    ok &= uf.unite(base + h, base + g.sigma(h), 1);
  }
  return ok;
}

}  // namespace

bool co_orientable(const MetricRibbonGraph& g) {
  ParityUnionFind uf(g.num_half_edges());
  return add_local_constraints(g, uf, 0);
}

std::optional<std::vector<int>> face_coorientation(const MetricRibbonGraph& g) {
  ParityUnionFind uf(g.num_half_edges());
  if (!add_local_constraints(g, uf, 0)) return std::nullopt;
  std::vector<int> bits(g.num_faces());
  for (int f = 0; f < g.num_faces(); ++f) bits[f] = uf.find(g.faces()[f].half_edges.front()).second;
  return bits;
}

const char* to_string(AssignmentIssue issue) {
  switch (issue) {
    case AssignmentIssue::PieceCountMismatch: return "PieceCountMismatch";
    case AssignmentIssue::GraphDisconnected: return "GraphDisconnected";
    case AssignmentIssue::GenusMismatch: return "GenusMismatch";
    case AssignmentIssue::FaceCountMismatch: return "FaceCountMismatch";
    case AssignmentIssue::FaceSlotNotBijective: return "FaceSlotNotBijective";
    case AssignmentIssue::LowValence: return "LowValence";
    case AssignmentIssue::LengthMismatch: return "LengthMismatch";
  }
  return "?";
}

bool AssignmentReport::has(AssignmentIssue issue) const {
  return std::any_of(issues.begin(), issues.end(), [issue](const auto& p) { return p.first == issue; });
}

AssignmentReport validate_assignment(const MulticurveConfig& cfg, const SpineAssignment& sa) {
  AssignmentReport report;
  auto add = [&](AssignmentIssue i, std::string msg) { report.issues.emplace_back(i, std::move(msg)); };
  if (sa.spines.size() != cfg.pieces.size() || sa.face_to_slot.size() != cfg.pieces.size()) {
    add(AssignmentIssue::PieceCountMismatch, "one spine and one face map per piece required");
    return report;
  }
  bool slots_ok = true;
  for (int j = 0; j < cfg.num_pieces(); ++j) {
    const auto& g = sa.spines[j];
    const std::string tag = "piece " + std::to_string(j);
    if (g.num_components() != 1) {
      add(AssignmentIssue::GraphDisconnected, tag + ": spine is disconnected");
      slots_ok = false;
      continue;
    }
    for (int v = 0; v < g.num_vertices(); ++v)
      if (g.valence(v) <= 2) add(AssignmentIssue::LowValence, tag + ": vertex " + std::to_string(v) + " has valence <= 2");
    if (g.num_faces() != cfg.pieces[j].slots) {
      add(AssignmentIssue::FaceCountMismatch, tag + ": spine has " + std::to_string(g.num_faces()) + " faces but piece has " +
                                                  std::to_string(cfg.pieces[j].slots) + " slots");
      slots_ok = false;
      continue;
    }
    if (g.genus() != cfg.pieces[j].genus)
      add(AssignmentIssue::GenusMismatch, tag + ": spine genus " + std::to_string(g.genus()) + " != piece genus " +
                                              std::to_string(cfg.pieces[j].genus));
    const auto& map = sa.face_to_slot[j];
    std::set<int> seen(map.begin(), map.end());
    bool bijective = static_cast<int>(map.size()) == g.num_faces() && static_cast<int>(seen.size()) == g.num_faces() &&
                     (seen.empty() || (*seen.begin() >= 0 && *seen.rbegin() < cfg.pieces[j].slots));
    if (!bijective) {
      add(AssignmentIssue::FaceSlotNotBijective, tag + ": face->slot map is not a bijection");
      slots_ok = false;
    }
  }
  if (slots_ok) {
    for (int i = 0; i < cfg.num_curves(); ++i) {
      const auto& gl = cfg.gluing[i];
      const auto& pa = sa.spines[gl.side_a.piece].faces()[face_at_slot(sa, gl.side_a)].perimeter;
      const auto& pb = sa.spines[gl.side_b.piece].faces()[face_at_slot(sa, gl.side_b)].perimeter;
      if (pa != pb)
        add(AssignmentIssue::LengthMismatch, "curve " + std::to_string(i) + ": glued faces have perimeters " +
                                                 format_rational(pa) + " and " + format_rational(pb));
    }
  }
  return report;
}

void require_valid(const MulticurveConfig& cfg, const SpineAssignment& sa) {
  require_valid(cfg);
  auto report = validate_assignment(cfg, sa);
  if (!report.ok()) throw Error(ErrorCode::InvalidAssignment, report.issues.front().second);
}

int face_at_slot(const SpineAssignment& sa, const SlotRef& slot) {
  const auto& map = sa.face_to_slot[slot.piece];
  auto it = std::find(map.begin(), map.end(), slot.slot);
  if (it == map.end()) throw Error(ErrorCode::InvalidAssignment, "slot has no face");
  return static_cast<int>(it - map.begin());
}

std::vector<Rational> curve_lengths(const MulticurveConfig& cfg, const SpineAssignment& sa) {
  std::vector<Rational> lengths;
  for (const auto& gl : cfg.gluing)
    lengths.push_back(sa.spines[gl.side_a.piece].faces()[face_at_slot(sa, gl.side_a)].perimeter);
  return lengths;
}

JointOrientation jointly_orientable(const SpineAssignment& sa, const MulticurveConfig& cfg) {
  require_valid(cfg, sa);
  std::vector<int> base(cfg.pieces.size() + 1, 0);
  for (int j = 0; j < cfg.num_pieces(); ++j) base[j + 1] = base[j] + sa.spines[j].num_half_edges();
  ParityUnionFind uf(base.back());
  bool ok = true;
  for (int j = 0; j < cfg.num_pieces(); ++j) ok &= add_local_constraints(sa.spines[j], uf, base[j]);

  auto marked = [&](const SlotRef& s) {
    const auto& g = sa.spines[s.piece];
    return base[s.piece] + g.faces()[face_at_slot(sa, s)].half_edges.front();
  };
  for (const auto& gl : cfg.gluing) ok &= uf.unite(marked(gl.side_a), marked(gl.side_b), 1);

  JointOrientation out;
  out.jointly_orientable = ok;
  out.epsilon = ok ? 1 : -1;
  if (ok) {
    out.face_bits.resize(cfg.pieces.size());
    for (int j = 0; j < cfg.num_pieces(); ++j) {
      const auto& g = sa.spines[j];
      for (const auto& f : g.faces()) out.face_bits[j].push_back(uf.find(base[j] + f.half_edges.front()).second);
    }
    for (const auto& gl : cfg.gluing) out.cylinder_bits.push_back(uf.find(marked(gl.side_a)).second);
  }
  return out;
}

const char* to_string(SpineKind kind) {
  switch (kind) {
    case SpineKind::Theta: return "theta";
    case SpineKind::Nabla: return "nabla";
    case SpineKind::Dumbbell: return "dumbbell";
  }
  return "?";
}

PantsSpine pants_spine(const Rational& a, const Rational& b, const Rational& c) {
  if (a <= 0 || b <= 0 || c <= 0) throw Error(ErrorCode::NonPositiveLength, "pants boundary lengths must be positive");
  const std::array<Rational, 3> len{a, b, c};
  int big = -1;
  for (int k = 0; k < 3; ++k) {
    if (len[k] >= len[(k + 1) % 3] + len[(k + 2) % 3]) {
      big = k;
      break;
    }
  }

  PantsSpine out;
  if (big < 0) {
    // u = (0 1 2), v = (3 5 4); faces {1,3}, {2,4}, {0,5} have perimeters a, b, c.
    Rational x = (a - b + c) / 2, y = (a + b - c) / 2, z = (-a + b + c) / 2;
    out.graph = MetricRibbonGraph({{0, 1, 2}, {3, 5, 4}}, {{0, 3, x}, {1, 4, y}, {2, 5, z}});
    out.kind = SpineKind::Theta;
    out.face_of_boundary = {out.graph.face_of(1), out.graph.face_of(2), out.graph.face_of(0)};
    return out;
  }

  const int s1 = (big + 1) % 3, s2 = (big + 2) % 3;
  const Rational bar = (len[big] - len[s1] - len[s2]) / 2;
  out.long_boundary = big;
  if (bar == 0) {
    out.graph = MetricRibbonGraph({{0, 1, 2, 3}}, {{0, 1, len[s1]}, {2, 3, len[s2]}});
    out.kind = SpineKind::Nabla;
    out.face_of_boundary[big] = out.graph.face_of(0);
    out.face_of_boundary[s1] = out.graph.face_of(1);
    out.face_of_boundary[s2] = out.graph.face_of(3);
  } else {
    out.graph = MetricRibbonGraph({{0, 1, 2}, {3, 4, 5}}, {{0, 1, len[s1]}, {2, 3, bar}, {4, 5, len[s2]}});
    out.kind = SpineKind::Dumbbell;
    out.face_of_boundary[big] = out.graph.face_of(0);
    out.face_of_boundary[s1] = out.graph.face_of(1);
    out.face_of_boundary[s2] = out.graph.face_of(5);
  }
  return out;
}

MetricRibbonGraph plumbing_fixture(int p, const Rational& boundary_length) {
  if (p < 3) throw Error(ErrorCode::OutOfRange, "plumbing fixture needs p >= 3");
  if (boundary_length <= 0) throw Error(ErrorCode::NonPositiveLength, "plumbing boundary length must be positive");
  std::vector<int> u(p), v(p);
  std::vector<RibbonEdge> edges;
  for (int k = 0; k < p; ++k) {
    u[k] = k;
    v[k] = 2 * p - 1 - k;  // reversed order at the second vertex
    edges.push_back({k, p + k, boundary_length / 2});
  }
  return MetricRibbonGraph({u, v}, std::move(edges));
}

MetricRibbonGraph single_vertex_graph(int valence, const std::vector<int>& pairing, const std::vector<Rational>& lengths) {
  if (valence % 2 != 0 || valence <= 0) throw Error(ErrorCode::OddValence, "single-vertex graph needs even valence");
  if (static_cast<int>(pairing.size()) != valence)
    throw Error(ErrorCode::MalformedGraph, "pairing must cover every slot");
  std::vector<RibbonEdge> edges;
  for (int i = 0; i < valence; ++i) {
    int j = pairing[i];
    if (j < 0 || j >= valence || j == i || pairing[j] != i)
      throw Error(ErrorCode::MalformedGraph, "pairing is not a fixed-point-free involution");
    if (i < j) {
      size_t e = edges.size();
      if (e >= lengths.size()) throw Error(ErrorCode::MalformedGraph, "not enough edge lengths");
      edges.push_back({i, j, lengths[e]});
    }
  }
  std::vector<int> cycle(valence);
  std::iota(cycle.begin(), cycle.end(), 0);
  return MetricRibbonGraph({cycle}, std::move(edges));
}

}  // namespace ttlab
