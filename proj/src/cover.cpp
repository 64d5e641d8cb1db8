#include "ttlab/cover.hpp"

#include <numeric>

#include "ttlab/errors.hpp"

namespace ttlab {

namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(int a, int b) { parent_[find(a)] = find(b); }
  int count() {
    int c = 0;
    for (int i = 0; i < static_cast<int>(parent_.size()); ++i) c += find(i) == i;
    return c;
  }

 private:
  std::vector<int> parent_;
};

// A half-edge step along a face, lifted: base 1-cell, orientation sign and sheet.
struct Step {
  int cell;
  int sign;
  int sheet;
};

int global_edge(const BranchedDoubleCover& c, int piece, int h) {
  return c.edge_offset[piece] + c.spines.spines[piece].edge_of(h);
}

int half_sign(const MetricRibbonGraph& g, int h) { return g.edges()[g.edge_of(h)].first == h ? 1 : -1; }

int flip_of(const MetricRibbonGraph& g, int h) { return g.edges()[g.edge_of(h)].first == h ? 0 : 1; }

// Walk around the face at `slot`, lifted to the given cylinder sheet. Bottom faces run
// along +x, top faces along -x, which flips the edge sheet once more.
std::vector<Step> lifted_walk(const BranchedDoubleCover& c, const SlotRef& slot, int sheet, bool top) {
  const auto& g = c.spines.spines[slot.piece];
  int f = face_at_slot(c.spines, slot);
  std::vector<Step> out;
  for (int h : g.faces()[f].half_edges)
    out.push_back({global_edge(c, slot.piece, h), half_sign(g, h), sheet ^ flip_of(g, h) ^ (top ? 1 : 0)});
  return out;
}

int cover_vertex(const BranchedDoubleCover& c, int piece, int h, int sheet) {
  const auto& g = c.spines.spines[piece];
  int v = c.vertex_offset[piece] + g.vertex_of(h);
  int parity = g.valence(g.vertex_of(h)) % 2 == 0 ? g.position_at_vertex(h) % 2 : 0;
  return c.vertex_lift[v][sheet ^ parity];
}

}  // namespace

int BranchedDoubleCover::num_branch_points() const {
  int n = 0;
  for (char b : branch) n += b;
  return n;
}

BranchedDoubleCover holonomy_double_cover(const MulticurveConfig& cfg, const SpineAssignment& sa) {
  try {
    require_valid(cfg, sa);
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidSurface, e.what());
  }
  BranchedDoubleCover c;
  c.config = cfg;
  c.spines = sa;
  const int pieces = cfg.num_pieces();
  const int n = cfg.num_curves();
  c.vertex_offset.resize(pieces);
  c.edge_offset.resize(pieces);
  for (int j = 0; j < pieces; ++j) {
    c.vertex_offset[j] = c.base_vertices;
    c.edge_offset[j] = c.base_ribbon_edges;
    c.base_vertices += sa.spines[j].num_vertices();
    c.base_ribbon_edges += sa.spines[j].num_edges();
  }
  c.base_edges = c.base_ribbon_edges + n;
  c.base_faces = n;

  c.branch.assign(c.base_vertices, 0);
  c.vertex_lift.resize(c.base_vertices);
  for (int j = 0; j < pieces; ++j) {
    const auto& g = sa.spines[j];
    for (int v = 0; v < g.num_vertices(); ++v) {
      int b = c.vertex_offset[j] + v;
      if (g.valence(v) % 2 == 1) {
        c.branch[b] = 1;
        c.vertex_lift[b] = {c.num_vertices, c.num_vertices};
        c.vertex_projection.push_back(b);
        c.iota0.push_back(c.num_vertices);
        ++c.num_vertices;
      } else {
        c.vertex_lift[b] = {c.num_vertices, c.num_vertices + 1};
        c.vertex_projection.insert(c.vertex_projection.end(), {b, b});
        c.iota0.insert(c.iota0.end(), {c.num_vertices + 1, c.num_vertices});
        c.num_vertices += 2;
      }
    }
  }
  c.num_edges = 2 * c.base_edges;
  c.num_faces = 2 * c.base_faces;
  for (int e = 0; e < c.num_edges; ++e) c.iota1.push_back(e ^ 1);
  for (int f = 0; f < c.num_faces; ++f) c.iota2.push_back(f ^ 1);

  c.d1 = zero_matrix(c.num_vertices, c.num_edges);
  for (int j = 0; j < pieces; ++j) {
    const auto& g = sa.spines[j];
    for (int e = 0; e < g.num_edges(); ++e) {
      int h0 = g.edges()[e].first, h1 = g.edges()[e].second;
      for (int s = 0; s < 2; ++s) {
        int col = 2 * (c.edge_offset[j] + e) + s;
        c.d1[cover_vertex(c, j, h1, s ^ 1)][col] += 1;
        c.d1[cover_vertex(c, j, h0, s)][col] -= 1;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    const auto& gl = cfg.gluing[i];
    const auto& ga = sa.spines[gl.side_a.piece];
    const auto& gb = sa.spines[gl.side_b.piece];
    int ha = ga.faces()[face_at_slot(sa, gl.side_a)].half_edges.front();
    int hb = gb.faces()[face_at_slot(sa, gl.side_b)].half_edges.front();
    for (int s = 0; s < 2; ++s) {
      int col = 2 * (c.base_ribbon_edges + i) + s;
      c.d1[cover_vertex(c, gl.side_b.piece, hb, s ^ 1)][col] += 1;
      c.d1[cover_vertex(c, gl.side_a.piece, ha, s)][col] -= 1;
    }
  }

  // Each cylinder sheet: bottom walk, up the crossing, top walk, down the crossing.
  c.d2 = zero_matrix(c.num_edges, c.num_faces);
  for (int i = 0; i < n; ++i) {
    for (int s = 0; s < 2; ++s) {
      int col = 2 * i + s;
      for (const auto& st : lifted_walk(c, cfg.gluing[i].side_a, s, false)) c.d2[2 * st.cell + st.sheet][col] += st.sign;
      for (const auto& st : lifted_walk(c, cfg.gluing[i].side_b, s, true)) c.d2[2 * st.cell + st.sheet][col] += st.sign;
    }
  }

  UnionFind all(c.num_vertices);
  for (int e = 0; e < c.num_edges; ++e) {
    int first = -1;
    for (int v = 0; v < c.num_vertices; ++v) {
      if (c.d1[v][e] == 0) continue;
      if (first < 0) first = v;
      else all.unite(first, v);
    }
  }
  c.components = all.count();

  for (int j = 0; j < pieces; ++j) {
    const auto& g = sa.spines[j];
    UnionFind local(c.num_vertices);
    std::vector<char> used(c.num_vertices, 0);
    for (int e = 0; e < g.num_edges(); ++e) {
      int h0 = g.edges()[e].first, h1 = g.edges()[e].second;
      for (int s = 0; s < 2; ++s) {
        int a = cover_vertex(c, j, h0, s), b = cover_vertex(c, j, h1, s ^ 1);
        used[a] = used[b] = 1;
        local.unite(a, b);
      }
    }
    int count = 0;
    for (int v = 0; v < c.num_vertices; ++v) count += used[v] && local.find(v) == v;
    c.piece_preimage_components.push_back(count);
  }
  return c;
}

int cover_genus(const BranchedDoubleCover& cover) {
  if (!cover.connected()) throw Error(ErrorCode::Disconnected, "cover has " + std::to_string(cover.components) + " components");
  return (2 - cover.euler_characteristic()) / 2;
}

std::vector<int> component_genera(const BranchedDoubleCover& cover) {
  if (cover.connected()) return {cover_genus(cover)};
  int chi = cover.euler_characteristic() / cover.components;
  return std::vector<int>(cover.components, (2 - chi) / 2);
}

AntiInvariantH1 h1_anti_invariant(const BranchedDoubleCover& cover) {
  AntiInvariantH1 out;
  std::vector<int> free_vertices;
  for (int b = 0; b < cover.base_vertices; ++b)
    if (!cover.branch[b]) free_vertices.push_back(b);

  // Coefficient of a_y in the boundary of a_x is the sheet-0 coefficient of d(x_0 - x_1).
  out.d1 = zero_matrix(static_cast<int>(free_vertices.size()), cover.base_edges);
  for (int x = 0; x < cover.base_edges; ++x)
    for (int r = 0; r < static_cast<int>(free_vertices.size()); ++r) {
      int y0 = cover.vertex_lift[free_vertices[r]][0];
      out.d1[r][x] = cover.d1[y0][2 * x] - cover.d1[y0][2 * x + 1];
    }
  out.d2 = zero_matrix(cover.base_edges, cover.base_faces);
  for (int x = 0; x < cover.base_faces; ++x)
    for (int y = 0; y < cover.base_edges; ++y) out.d2[y][x] = cover.d2[2 * y][2 * x] - cover.d2[2 * y][2 * x + 1];

  out.rank_d1 = rank(out.d1);
  out.rank_d2 = rank(out.d2);
  out.dim = cover.base_edges - out.rank_d1 - out.rank_d2;
  return out;
}

std::vector<std::vector<mpz_class>> lifted_curve_classes(const BranchedDoubleCover& cover, LiftChoice choice) {
  std::vector<std::vector<mpz_class>> out;
  const auto minus = h1_anti_invariant(cover);
  for (int i = 0; i < cover.config.num_curves(); ++i) {
    const auto& gl = cover.config.gluing[i];
    std::vector<mpz_class> v(cover.base_edges, 0);
    auto steps = choice.use_top ? lifted_walk(cover, gl.side_b, choice.sheet, true)
                                : lifted_walk(cover, gl.side_a, choice.sheet, false);
    for (const auto& st : steps) v[st.cell] += st.sheet == 0 ? st.sign : -st.sign;
    for (const auto& row : minus.d1) {
      mpz_class acc = 0;
      for (int x = 0; x < cover.base_edges; ++x) acc += row[x] * v[x];
      if (acc != 0) throw Error(ErrorCode::NonLiftable, "lift of curve " + std::to_string(i) + " is not closed");
    }
    out.push_back(std::move(v));
  }
  return out;
}

int rank_lower_bound(const BranchedDoubleCover& cover, LiftChoice choice) {
  const auto minus = h1_anti_invariant(cover);
  const auto classes = lifted_curve_classes(cover, choice);
  IntMatrix joined = minus.d2;
  for (int y = 0; y < cover.base_edges; ++y)
    for (const auto& cls : classes) joined[y].push_back(cls[y]);
  return rank(joined) - minus.rank_d2;
}

mpz_class core_intersection(const BranchedDoubleCover& cover, const std::vector<mpz_class>& cycle, int curve) {
  if (curve < 0 || curve >= cover.config.num_curves()) throw Error(ErrorCode::BadIndex, "no curve " + std::to_string(curve));
  // The core of sheet s meets only the crossing edge of that sheet. In the anti-invariant
  // basis the cycle carries c on sheet 0 and -c on sheet 1, and so does the core class.
  return 2 * cycle[cover.base_ribbon_edges + curve];
}

int count_co_orientable(const SpineAssignment& sa) {
  int n = 0;
  for (const auto& g : sa.spines) n += co_orientable(g);
  return n;
}

int relations_formula(const MulticurveConfig& cfg, const SpineAssignment& sa) {
  require_valid(cfg, sa);
  return cfg.num_curves() - count_co_orientable(sa) + (jointly_orientable(sa, cfg).jointly_orientable ? 1 : 0);
}

Rational stratum_rank(int genus, const std::vector<int>& kappa, int epsilon) {
  if (epsilon != 1 && epsilon != -1) throw Error(ErrorCode::BadPartition, "epsilon must be +1 or -1");
  long sum = 0;
  int odd = 0;
  for (int k : kappa) {
    if (k <= 0) throw Error(ErrorCode::BadPartition, "zero orders must be positive");
    sum += k;
    odd += k % 2;
  }
  if (sum != 4L * genus - 4) throw Error(ErrorCode::BadPartition, "zero orders must sum to 4g-4");
  if (epsilon == 1) {
    if (odd > 0) throw Error(ErrorCode::BadPartition, "abelian squares have even zero orders");
    return Rational(genus);
  }
  return Rational(genus) + ratio(odd, 2) - 1;
}

}  // namespace ttlab
