#pragma once

// Instance generators shared by the unit tests and the acceptance binary.

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "ttlab/errors.hpp"
#include "ttlab/families.hpp"
#include "ttlab/ribbon.hpp"
#include "ttlab/topology.hpp"

namespace support {

using namespace ttlab;

struct Instance {
  std::string name;
  MulticurveConfig cfg;
  SpineAssignment sa;
  std::vector<Rational> heights;
};

inline int uniform(std::mt19937_64& rng, int n) { return static_cast<int>(rng() % static_cast<uint64_t>(n)); }

// 'T' theta, 'N' nabla, 'D' dumbbell, from the triangle inequality.
inline char pants_type(Rational a, Rational b, Rational c) {
  Rational v[3] = {a, b, c};
  std::sort(v, v + 3);
  if (v[2] < v[0] + v[1]) return 'T';
  if (v[2] == v[0] + v[1]) return 'N';
  return 'D';
}

inline std::vector<Rational> default_heights(const MulticurveConfig& cfg) {
  std::vector<Rational> h;
  for (int i = 0; i < cfg.num_curves(); ++i) h.push_back(ratio(i + 2, i + 1));
  return h;
}

/// Every pants type of the genus times every realisable spine type per piece; lengths are
/// searched in 1..max_len.
inline std::vector<Instance> pants_catalog(int genus, int max_len = 7) {
  std::vector<Instance> out;
  auto configs = enumerate_pants_configs(genus);
  for (size_t type = 0; type < configs.size(); ++type) {
    const auto& cfg = configs[type];
    const int n = cfg.num_curves();
    auto table = slot_table(cfg);
    std::map<std::string, std::vector<Rational>> witness;
    std::vector<int> len(n, 1);
    while (true) {
      std::string key;
      for (int j = 0; j < cfg.num_pieces(); ++j) {
        Rational b[3];
        for (int s = 0; s < 3; ++s) b[s] = len[table[j][s].curve];
        key += pants_type(b[0], b[1], b[2]);
      }
      if (!witness.count(key)) witness[key] = std::vector<Rational>(len.begin(), len.end());
      int k = 0;
      while (k < n && len[k] == max_len) len[k++] = 1;
      if (k == n) break;
      ++len[k];
    }
    for (const auto& [key, lengths] : witness) {
      Instance inst;
      inst.name = "g" + std::to_string(genus) + "-type" + std::to_string(type) + "-" + key;
      inst.cfg = cfg;
      inst.sa = pants_assignment(cfg, lengths);
      inst.heights = default_heights(cfg);
      out.push_back(std::move(inst));
    }
  }
  return out;
}

/// Random gluing of pants, one-holed tori and plumbing fixtures along curves of lengths
/// 1, 2 or 3, in genus 2..max_genus.
inline Instance random_instance(std::mt19937_64& rng, int max_genus = 5) {
  while (true) {
    const int genus = 2 + uniform(rng, max_genus - 1);
    int deficit = 2 * genus - 2;
    std::vector<MetricRibbonGraph> graphs;
    std::vector<std::vector<int>> face_to_slot;
    std::vector<ComplementPiece> pieces;
    std::vector<std::vector<int>> slot_class;
    while (deficit > 0) {
      const int kind = uniform(rng, 3);
      if (kind == 0) {
        int c[3] = {1 + uniform(rng, 3), 1 + uniform(rng, 3), 1 + uniform(rng, 3)};
        auto ps = pants_spine(c[0], c[1], c[2]);
        std::vector<int> f2s(3);
        for (int k = 0; k < 3; ++k) f2s[ps.face_of_boundary[k]] = k;
        graphs.push_back(ps.graph);
        face_to_slot.push_back(f2s);
        pieces.push_back({0, 3});
        slot_class.push_back({c[0], c[1], c[2]});
        deficit -= 1;
      } else if (kind == 1) {
        int c = 1 + uniform(rng, 3);
        Rational a = uniform(rng, 2) ? ratio(c, 4) : ratio(c, 6);
        graphs.push_back(single_vertex_graph(4, {2, 3, 0, 1}, {a, ratio(c, 2) - a}));
        face_to_slot.push_back({0});
        pieces.push_back({1, 1});
        slot_class.push_back({c});
        deficit -= 1;
      } else {
        const int p = 3 + uniform(rng, std::min(4, deficit));
        if (p - 2 > deficit) continue;
        int c = 1 + uniform(rng, 3);
        graphs.push_back(plumbing_fixture(p, c));
        std::vector<int> f2s(p);
        std::iota(f2s.begin(), f2s.end(), 0);
        face_to_slot.push_back(f2s);
        pieces.push_back({0, p});
        slot_class.push_back(std::vector<int>(p, c));
        deficit -= p - 2;
      }
    }
    std::map<int, std::vector<SlotRef>> by_class;
    for (int j = 0; j < static_cast<int>(pieces.size()); ++j)
      for (int s = 0; s < pieces[j].slots; ++s) by_class[slot_class[j][s]].push_back({j, s});
    MulticurveConfig cfg;
    cfg.genus = genus;
    cfg.pieces = pieces;
    bool ok = true;
    for (auto& [c, slots] : by_class) {
      if (slots.size() % 2) ok = false;
      std::shuffle(slots.begin(), slots.end(), rng);
      for (size_t k = 0; k + 1 < slots.size(); k += 2) cfg.gluing.push_back({slots[k], slots[k + 1]});
    }
    if (!ok || !validate_config(cfg).ok()) continue;
    std::shuffle(cfg.gluing.begin(), cfg.gluing.end(), rng);
    Instance inst;
    inst.cfg = cfg;
    inst.sa.spines = graphs;
    inst.sa.face_to_slot = face_to_slot;
    if (!validate_assignment(cfg, inst.sa).ok()) continue;
    for (int i = 0; i < cfg.num_curves(); ++i) inst.heights.push_back(ratio(1 + uniform(rng, 5), 1 + uniform(rng, 3)));
    return inst;
  }
}

inline std::vector<Instance> random_instances(uint64_t seed, int count, int max_genus = 5) {
  std::mt19937_64 rng(seed);
  std::vector<Instance> out;
  for (int k = 0; k < count; ++k) {
    out.push_back(random_instance(rng, max_genus));
    out.back().name = "random-" + std::to_string(k);
  }
  return out;
}

/// One piece: a single vertex of the given valence with unit edges, its faces glued in
/// pairs of equal perimeter. Every pairing of the vertex slots that admits such a face
/// matching is used.
inline std::vector<Instance> single_vertex_instances(int valence) {
  std::vector<Instance> out;
  std::vector<int> pairing(valence, -1);
  std::vector<std::vector<int>> all;
  auto rec = [&](auto&& self) -> void {
    int i = static_cast<int>(std::find(pairing.begin(), pairing.end(), -1) - pairing.begin());
    if (i == valence) {
      all.push_back(pairing);
      return;
    }
    for (int j = i + 1; j < valence; ++j) {
      if (pairing[j] != -1) continue;
      pairing[i] = j;
      pairing[j] = i;
      self(self);
      pairing[i] = pairing[j] = -1;
    }
  };
  rec(rec);
  for (const auto& p : all) {
    auto g = single_vertex_graph(valence, p, std::vector<Rational>(valence / 2, Rational(1)));
    const int f = g.num_faces();
    if (f % 2) continue;
    std::vector<int> order(f);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return g.faces()[a].perimeter < g.faces()[b].perimeter; });
    bool ok = true;
    MulticurveConfig cfg;
    const int gp = (2 - (1 - valence / 2) - f) / 2;
    cfg.genus = gp + f / 2;
    cfg.pieces = {{gp, f}};
    std::vector<int> f2s(f);
    for (int k = 0; k < f; k += 2) {
      if (g.faces()[order[k]].perimeter != g.faces()[order[k + 1]].perimeter) ok = false;
      f2s[order[k]] = k;
      f2s[order[k + 1]] = k + 1;
      cfg.gluing.push_back({{0, k}, {0, k + 1}});
    }
    if (!ok || cfg.genus < 2 || !validate_config(cfg).ok()) continue;
    Instance inst;
    inst.cfg = cfg;
    inst.sa.spines = {g};
    inst.sa.face_to_slot = {f2s};
    if (!validate_assignment(cfg, inst.sa).ok()) continue;
    inst.heights = default_heights(cfg);
    inst.name = "vertex" + std::to_string(valence) + "-" + std::to_string(out.size());
    out.push_back(std::move(inst));
  }
  return out;
}

/// Plumbing fixtures of the given valences glued by random pairings of their slots.
inline std::vector<Instance> random_plumbings(uint64_t seed, const std::vector<int>& valences, int count) {
  std::mt19937_64 rng(seed);
  std::vector<Instance> out;
  int attempts = 0;
  while (static_cast<int>(out.size()) < count && attempts++ < 100 * count) {
    std::vector<SlotRef> slots;
    for (int j = 0; j < static_cast<int>(valences.size()); ++j)
      for (int s = 0; s < valences[j]; ++s) slots.push_back({j, s});
    std::shuffle(slots.begin(), slots.end(), rng);
    std::vector<CurveGluing> gluing;
    for (size_t k = 0; k + 1 < slots.size(); k += 2) gluing.push_back({slots[k], slots[k + 1]});
    try {
      auto data = plumbing_surface(valences, gluing, Rational(1));
      Instance inst;
      inst.cfg = data.config;
      inst.sa = data.spines;
      inst.heights = default_heights(inst.cfg);
      inst.name = "plumbing-" + std::to_string(out.size());
      out.push_back(std::move(inst));
    } catch (const Error&) {
    }
  }
  return out;
}

/// The same surface under new labels: curves, pieces, slots and half-edges permuted,
/// vertex cycles rotated, and the sides of some curves exchanged.
inline Instance relabel(const Instance& in, std::mt19937_64& rng) {
  const int n = in.cfg.num_curves(), m = in.cfg.num_pieces();
  std::vector<int> curve_perm(n), piece_perm(m);
  std::iota(curve_perm.begin(), curve_perm.end(), 0);
  std::iota(piece_perm.begin(), piece_perm.end(), 0);
  std::shuffle(curve_perm.begin(), curve_perm.end(), rng);
  std::shuffle(piece_perm.begin(), piece_perm.end(), rng);
  std::vector<std::vector<int>> slot_perm(m);
  for (int j = 0; j < m; ++j) {
    slot_perm[j].resize(in.cfg.pieces[j].slots);
    std::iota(slot_perm[j].begin(), slot_perm[j].end(), 0);
    std::shuffle(slot_perm[j].begin(), slot_perm[j].end(), rng);
  }

  Instance out;
  out.name = in.name + "-relabelled";
  out.cfg.genus = in.cfg.genus;
  out.cfg.pieces.resize(m);
  out.cfg.gluing.resize(n);
  out.heights.resize(n);
  for (int j = 0; j < m; ++j) out.cfg.pieces[piece_perm[j]] = in.cfg.pieces[j];
  for (int i = 0; i < n; ++i) {
    auto map = [&](SlotRef s) { return SlotRef{piece_perm[s.piece], slot_perm[s.piece][s.slot]}; };
    CurveGluing g{map(in.cfg.gluing[i].side_a), map(in.cfg.gluing[i].side_b)};
    if (uniform(rng, 2)) std::swap(g.side_a, g.side_b);
    out.cfg.gluing[curve_perm[i]] = g;
    out.heights[curve_perm[i]] = in.heights[i];
  }
  out.sa.spines.resize(m);
  out.sa.face_to_slot.resize(m);
  for (int j = 0; j < m; ++j) {
    const auto& g = in.sa.spines[j];
    std::vector<int> phi(g.num_half_edges());
    std::iota(phi.begin(), phi.end(), 0);
    std::shuffle(phi.begin(), phi.end(), rng);
    std::vector<std::vector<int>> cycles;
    for (const auto& c : g.vertex_cycles()) {
      std::vector<int> nc;
      for (int h : c) nc.push_back(phi[h]);
      std::rotate(nc.begin(), nc.begin() + uniform(rng, static_cast<int>(nc.size())), nc.end());
      cycles.push_back(nc);
    }
    std::shuffle(cycles.begin(), cycles.end(), rng);
    std::vector<RibbonEdge> edges;
    for (const auto& e : g.edges()) edges.push_back({std::min(phi[e.first], phi[e.second]), std::max(phi[e.first], phi[e.second]), e.length});
    std::shuffle(edges.begin(), edges.end(), rng);
    MetricRibbonGraph ng(cycles, edges);
    std::vector<int> inverse(phi.size());
    for (size_t h = 0; h < phi.size(); ++h) inverse[phi[h]] = static_cast<int>(h);
    std::vector<int> f2s(ng.num_faces());
    for (int f = 0; f < ng.num_faces(); ++f) {
      int old_face = g.face_of(inverse[ng.faces()[f].half_edges.front()]);
      f2s[f] = slot_perm[j][in.sa.face_to_slot[j][old_face]];
    }
    out.sa.spines[piece_perm[j]] = ng;
    out.sa.face_to_slot[piece_perm[j]] = f2s;
  }
  return out;
}

/// Criterion sweep: the genus 2 and 3 pants catalogue plus 200 random instances.
inline std::vector<Instance> sweep() {
  auto out = pants_catalog(2);
  auto g3 = pants_catalog(3);
  out.insert(out.end(), g3.begin(), g3.end());
  auto rnd = random_instances(20240611, 200);
  out.insert(out.end(), rnd.begin(), rnd.end());
  return out;
}

// Three unit squares in H(2): one vertex of valence 6, faces of perimeters 1, 1, 2, 2
// glued in equal pairs, jointly orientable.
inline Instance three_squares() {
  for (auto& inst : single_vertex_instances(6)) {
    const auto& g = inst.sa.spines[0];
    std::multiset<Rational> per;
    for (const auto& f : g.faces()) per.insert(f.perimeter);
    if (per != std::multiset<Rational>{1, 1, 2, 2}) continue;
    if (!jointly_orientable(inst.sa, inst.cfg).jointly_orientable) continue;
    inst.heights.assign(inst.cfg.num_curves(), Rational(1));
    return inst;
  }
  throw std::logic_error("no three-square surface found");
}

// Every corner of a square-tiled surface with one vertex is the cone point, so each
// primitive direction carries one connection per outgoing separatrix: 3 at angle 6 pi.
inline int lattice_count(double radius) {
  int count = 0;
  const int r = static_cast<int>(std::ceil(radius));
  for (int x = -r; x <= r; ++x)
    for (int y = 0; y <= r; ++y) {
      if (y == 0 && x <= 0) continue;
      if (std::gcd(std::abs(x), y) != 1) continue;
      if (x * x + y * y <= radius * radius + 1e-9) count += 3;
    }
  return count;
}

}  // namespace support
