#include "ttlab/topology.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "ttlab/errors.hpp"

namespace ttlab {

const char* to_string(Violation v) {
  switch (v) {
    case Violation::GenusTooSmall: return "GenusTooSmall";
    case Violation::EmptyPiece: return "EmptyPiece";
    case Violation::DiskOrAnnulus: return "DiskOrAnnulus";
    case Violation::BadSlotRef: return "BadSlotRef";
    case Violation::UnmatchedSlot: return "UnmatchedSlot";
    case Violation::SlotGluedTwice: return "SlotGluedTwice";
    case Violation::EulerMismatch: return "EulerMismatch";
    case Violation::SlotCountMismatch: return "SlotCountMismatch";
    case Violation::Disconnected: return "Disconnected";
  }
  return "?";
}

bool ValidationReport::has(Violation v) const {
  return std::any_of(entries.begin(), entries.end(), [v](const ViolationEntry& e) { return e.kind == v; });
}

void ValidationReport::add(Violation v, std::vector<int> indices, std::string message) {
  entries.push_back({v, std::move(indices), std::move(message)});
}

ValidationReport validate_config(const MulticurveConfig& cfg) {
  ValidationReport report;
  if (cfg.genus < 2) report.add(Violation::GenusTooSmall, {cfg.genus}, "surface genus must be at least 2");
  if (cfg.pieces.empty()) report.add(Violation::EmptyPiece, {}, "no complement pieces");

  int chi_sum = 0, slot_sum = 0;
  for (int j = 0; j < cfg.num_pieces(); ++j) {
    const auto& p = cfg.pieces[j];
    if (p.genus < 0 || p.slots < 1) {
      report.add(Violation::EmptyPiece, {j}, "piece " + std::to_string(j) + " has negative genus or no boundary");
    } else if (p.euler_characteristic() >= 0) {
      report.add(Violation::DiskOrAnnulus, {j}, "piece " + std::to_string(j) + " is a disk or an annulus");
    }
    chi_sum += p.euler_characteristic();
    slot_sum += p.slots;
  }

  std::vector<std::vector<int>> uses(cfg.pieces.size());
  for (int j = 0; j < cfg.num_pieces(); ++j) uses[j].assign(std::max(cfg.pieces[j].slots, 0), 0);

  auto touch = [&](int curve, const SlotRef& s) {
    if (s.piece < 0 || s.piece >= cfg.num_pieces() || s.slot < 0 || s.slot >= cfg.pieces[s.piece].slots) {
      report.add(Violation::BadSlotRef, {curve, s.piece, s.slot},
                 "curve " + std::to_string(curve) + " refers to a nonexistent slot");
      return;
    }
    ++uses[s.piece][s.slot];
  };
  for (int i = 0; i < cfg.num_curves(); ++i) {
    touch(i, cfg.gluing[i].side_a);
    touch(i, cfg.gluing[i].side_b);
  }
  for (int j = 0; j < cfg.num_pieces(); ++j) {
    for (int s = 0; s < static_cast<int>(uses[j].size()); ++s) {
      if (uses[j][s] == 0)
        report.add(Violation::UnmatchedSlot, {j, s},
                   "slot " + std::to_string(s) + " of piece " + std::to_string(j) + " is not glued");
      else if (uses[j][s] > 1)
        report.add(Violation::SlotGluedTwice, {j, s},
                   "slot " + std::to_string(s) + " of piece " + std::to_string(j) + " is glued more than once");
    }
  }

  if (chi_sum != 2 - 2 * cfg.genus) {
    std::ostringstream os;
    os << "sum of piece Euler characteristics " << chi_sum << " != 2-2g = " << 2 - 2 * cfg.genus;
    report.add(Violation::EulerMismatch, {chi_sum, 2 - 2 * cfg.genus}, os.str());
  }
  if (slot_sum != 2 * cfg.num_curves()) {
    std::ostringstream os;
    os << "total slot count " << slot_sum << " != 2n = " << 2 * cfg.num_curves();
    report.add(Violation::SlotCountMismatch, {slot_sum, 2 * cfg.num_curves()}, os.str());
  }

  if (!cfg.pieces.empty() && !report.has(Violation::BadSlotRef)) {
    std::vector<int> parent(cfg.pieces.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& gl : cfg.gluing) parent[find(gl.side_a.piece)] = find(gl.side_b.piece);
    for (int j = 1; j < cfg.num_pieces(); ++j) {
      if (find(j) != find(0)) {
        report.add(Violation::Disconnected, {j}, "piece " + std::to_string(j) + " is not connected to piece 0");
        break;
      }
    }
  }
  return report;
}

void require_valid(const MulticurveConfig& cfg) {
  auto report = validate_config(cfg);
  if (!report.ok()) throw Error(ErrorCode::InvalidConfig, report.entries.front().message);
}

bool is_pants_decomposition(const MulticurveConfig& cfg) {
  require_valid(cfg);
  bool pants = std::all_of(cfg.pieces.begin(), cfg.pieces.end(),
                           [](const ComplementPiece& p) { return p.genus == 0 && p.slots == 3; });
  if (pants && cfg.num_curves() != 3 * cfg.genus - 3)
    throw Error(ErrorCode::InvalidConfig, "pants decomposition with n != 3g-3");
  return pants;
}

std::vector<std::vector<SlotUse>> slot_table(const MulticurveConfig& cfg) {
  std::vector<std::vector<SlotUse>> table(cfg.pieces.size());
  for (int j = 0; j < cfg.num_pieces(); ++j) table[j].resize(cfg.pieces[j].slots);
  for (int i = 0; i < cfg.num_curves(); ++i) {
    table[cfg.gluing[i].side_a.piece][cfg.gluing[i].side_a.slot] = {i, true};
    table[cfg.gluing[i].side_b.piece][cfg.gluing[i].side_b.slot] = {i, false};
  }
  return table;
}

std::vector<std::vector<int>> piece_adjacency(const MulticurveConfig& cfg) {
  std::vector<std::vector<int>> adj(cfg.pieces.size(), std::vector<int>(cfg.pieces.size(), 0));
  for (const auto& gl : cfg.gluing) {
    int a = gl.side_a.piece, b = gl.side_b.piece;
    if (a == b) {
      ++adj[a][a];
    } else {
      ++adj[a][b];
      ++adj[b][a];
    }
  }
  return adj;
}

namespace {

// Branch-and-bound search for the lexicographically least relabelled key.
// Chunk for position k: genus, slots, loops, then adjacency to positions 0..k-1.
struct Canonicalizer {
  const std::vector<ComplementPiece>& pieces;
  const std::vector<std::vector<int>>& adj;
  int n;
  std::vector<int> best, best_perm, prefix, perm;
  std::vector<char> used;

  Canonicalizer(const std::vector<ComplementPiece>& p, const std::vector<std::vector<int>>& a)
      : pieces(p), adj(a), n(static_cast<int>(p.size())), used(p.size(), 0) {}

  void chunk(int v, std::vector<int>& out) const {
    out.push_back(pieces[v].genus);
    out.push_back(pieces[v].slots);
    out.push_back(adj[v][v]);
    // Negated so that the minimal labelling visits neighbours first, which prunes early.
    for (int u : perm) out.push_back(-adj[v][u]);
  }

  // -1 if prefix < best on the overlap, 0 if equal, 1 if greater.
  int compare_prefix() const {
    if (best.empty()) return -1;
    for (size_t i = 0; i < prefix.size(); ++i) {
      if (prefix[i] != best[i]) return prefix[i] < best[i] ? -1 : 1;
    }
    return 0;
  }

  void search() {
    if (static_cast<int>(perm.size()) == n) {
      if (best.empty() || prefix < best) {
        best = prefix;
        best_perm = perm;
      }
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[v]) continue;
      size_t mark = prefix.size();
      chunk(v, prefix);
      if (compare_prefix() <= 0) {
        used[v] = 1;
        perm.push_back(v);
        search();
        perm.pop_back();
        used[v] = 0;
      }
      prefix.resize(mark);
    }
  }
};

}  // namespace

std::vector<int> canonical_key(const MulticurveConfig& cfg) {
  auto adj = piece_adjacency(cfg);
  Canonicalizer c(cfg.pieces, adj);
  c.search();
  std::vector<int> key{cfg.genus};
  key.insert(key.end(), c.best.begin(), c.best.end());
  return key;
}

MulticurveConfig config_from_adjacency(int genus, const std::vector<ComplementPiece>& pieces,
                                       const std::vector<std::vector<int>>& adjacency) {
  MulticurveConfig cfg;
  cfg.genus = genus;
  cfg.pieces = pieces;
  std::vector<int> next_slot(pieces.size(), 0);
  int n = static_cast<int>(pieces.size());
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      for (int m = 0; m < adjacency[a][b]; ++m) {
        SlotRef sa{a, next_slot[a]++};
        SlotRef sb{b, next_slot[b]++};
        cfg.gluing.push_back({sa, sb});
      }
    }
  }
  return cfg;
}

MulticurveConfig canonicalize(const MulticurveConfig& cfg) {
  auto adj = piece_adjacency(cfg);
  Canonicalizer c(cfg.pieces, adj);
  c.search();
  int n = cfg.num_pieces();
  std::vector<ComplementPiece> pieces(n);
  std::vector<std::vector<int>> relabelled(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i) {
    pieces[i] = cfg.pieces[c.best_perm[i]];
    for (int j = 0; j < n; ++j) relabelled[i][j] = adj[c.best_perm[i]][c.best_perm[j]];
  }
  return config_from_adjacency(cfg.genus, pieces, relabelled);
}

namespace {

// Fills the upper triangle of a cubic multigraph adjacency matrix (loops on the
// diagonal count as degree 2) and collects connected ones by canonical key.
struct CubicGenerator {
  int n, genus;
  std::vector<std::vector<int>> adj;
  std::vector<int> degree;
  std::set<std::vector<int>> seen;
  std::vector<MulticurveConfig> out;

  CubicGenerator(int vertices, int g) : n(vertices), genus(g), adj(vertices, std::vector<int>(vertices, 0)), degree(vertices, 0) {}

  bool connected() const {
    std::vector<char> mark(n, 0);
    std::vector<int> stack{0};
    mark[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u = 0; u < n; ++u)
        if (u != v && adj[v][u] > 0 && !mark[u]) {
          mark[u] = 1;
          ++count;
          stack.push_back(u);
        }
    }
    return count == n;
  }

  void emit() {
    if (!connected()) return;
    std::vector<ComplementPiece> pieces(n, ComplementPiece{0, 3});
    auto cfg = config_from_adjacency(genus, pieces, adj);
    auto key = canonical_key(cfg);
    if (seen.insert(key).second) out.push_back(canonicalize(cfg));
  }

  // Only breadth-first numberings are kept: with rows 0..i filled, the later vertices that
  // already have an earlier neighbour form a prefix, their first such neighbours are
  // non-decreasing, and vertex i + 1 is among them. Every connected graph has one.
  bool bfs_numbered(int i) const {
    int last_parent = 0;
    bool open = true;
    for (int v = i + 1; v < n; ++v) {
      int parent = -1;
      for (int u = 0; u <= i && parent < 0; ++u)
        if (adj[u][v] > 0) parent = u;
      if (parent < 0) {
        if (v == i + 1) return false;
        open = false;
        continue;
      }
      if (!open || parent < last_parent) return false;
      last_parent = parent;
    }
    return true;
  }

  // Row i is completed before moving on; entries (i, j) for j >= i.
  void fill(int i, int j) {
    if (i == n) {
      emit();
      return;
    }
    if (j == n) {
      if (degree[i] == 3 && bfs_numbered(i)) fill(i + 1, i + 1);
      return;
    }
    int cost = (i == j) ? 2 : 1;
    for (int m = 0;; ++m) {
      if (degree[i] + cost * m > 3) break;
      if (i != j && degree[j] + m > 3) break;
      adj[i][j] = m;
      if (i != j) adj[j][i] = m;
      degree[i] += cost * m;
      if (i != j) degree[j] += m;
      fill(i, j + 1);
      degree[i] -= cost * m;
      if (i != j) degree[j] -= m;
      adj[i][j] = 0;
      if (i != j) adj[j][i] = 0;
    }
  }
};

}  // namespace

std::vector<MulticurveConfig> enumerate_pants_configs(int genus) {
  if (genus < 2 || genus > 5) throw Error(ErrorCode::OutOfRange, "enumerate_pants_configs needs 2 <= g <= 5");
  CubicGenerator gen(2 * genus - 2, genus);
  gen.fill(0, 0);
  std::vector<std::pair<std::vector<int>, MulticurveConfig>> keyed;
  for (auto& c : gen.out) keyed.emplace_back(canonical_key(c), std::move(c));
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<MulticurveConfig> result;
  for (auto& [k, c] : keyed) result.push_back(std::move(c));
  return result;
}

}  // namespace ttlab
