#include <algorithm>

#include "ttlab/classify.hpp"
#include "ttlab/errors.hpp"

namespace ttlab {

namespace {

class InvolutionSearch {
 public:
  InvolutionSearch(const MulticurveConfig& cfg, const SpineAssignment& sa, long budget)
      : cfg_(cfg), sa_(sa), budget_(budget), table_(slot_table(cfg)) {
    const int p = cfg.num_pieces();
    result_.piece_map.assign(p, -1);
    result_.half_edge_map.resize(p);
  }

  std::optional<PresentationInvolution> run() {
    if (assign(0)) return result_;
    return std::nullopt;
  }

 private:
  // Face on the other side of the curve glued at this face: (piece, face).
  std::pair<int, int> opposite(int piece, int face) const {
    SlotUse use = table_[piece][sa_.face_to_slot[piece][face]];
    const auto& gl = cfg_.gluing[use.curve];
    SlotRef other = use.side_a ? gl.side_b : gl.side_a;
    return {other.piece, face_at_slot(sa_, other)};
  }

  bool propagate(int j, int k, int seed, std::vector<int>& map) {
    if (++explored_ > budget_) throw Error(ErrorCode::SearchBudgetExceeded, "involution search budget exhausted");
    const auto& gj = sa_.spines[j];
    const auto& gk = sa_.spines[k];
    if (gj.num_half_edges() != gk.num_half_edges() || gj.num_vertices() != gk.num_vertices()) return false;
    map.assign(gj.num_half_edges(), -1);
    std::vector<int> inverse(gk.num_half_edges(), -1);
    std::vector<int> stack{0};
    map[0] = seed;
    inverse[seed] = 0;
    while (!stack.empty()) {
      int h = stack.back();
      stack.pop_back();
      int hk = map[h];
      if (gj.half_edge_length(h) != gk.half_edge_length(hk)) return false;
      for (auto [a, b] : {std::pair{gj.sigma(h), gk.sigma(hk)}, std::pair{gj.iota(h), gk.iota(hk)}}) {
        if (map[a] == -1) {
          if (inverse[b] != -1) return false;
          map[a] = b;
          inverse[b] = a;
          stack.push_back(a);
        } else if (map[a] != b) {
          return false;
        }
      }
    }
    if (std::find(map.begin(), map.end(), -1) != map.end()) return false;
    for (int f = 0; f < gj.num_faces(); ++f) {
      int image = gk.face_of(map[gj.faces()[f].half_edges.front()]);
      if (opposite(j, f) != std::pair{k, image}) return false;
    }
    if (j == k)
      for (int h = 0; h < gj.num_half_edges(); ++h)
        if (map[map[h]] != h) return false;
    return true;
  }

  int fixed_points() const {
    int count = 2 * cfg_.num_curves();
    for (int j = 0; j < cfg_.num_pieces(); ++j) {
      if (result_.piece_map[j] != j) continue;
      const auto& g = sa_.spines[j];
      const auto& f = result_.half_edge_map[j];
      for (int v = 0; v < g.num_vertices(); ++v) count += g.vertex_of(f[g.vertex_cycles()[v].front()]) == v;
      for (const auto& e : g.edges()) count += f[e.first] == e.second;
    }
    return count;
  }

  bool assign(int j) {
    const int p = cfg_.num_pieces();
    while (j < p && result_.piece_map[j] != -1) ++j;
    if (j == p) {
      result_.fixed_points = fixed_points();
      return result_.fixed_points == 2 * cfg_.genus + 2;
    }
    for (int k = j; k < p; ++k) {
      if (result_.piece_map[k] != -1 || cfg_.pieces[j] != cfg_.pieces[k]) continue;
      for (int seed = 0; seed < sa_.spines[k].num_half_edges(); ++seed) {
        std::vector<int> map;
        if (!propagate(j, k, seed, map)) continue;
        result_.piece_map[j] = k;
        result_.piece_map[k] = j;
        if (k != j) {
          std::vector<int> inverse(map.size());
          for (int h = 0; h < static_cast<int>(map.size()); ++h) inverse[map[h]] = h;
          result_.half_edge_map[k] = std::move(inverse);
        }
        result_.half_edge_map[j] = std::move(map);
        if (assign(j + 1)) return true;
        result_.piece_map[j] = result_.piece_map[k] = -1;
      }
    }
    return false;
  }

  const MulticurveConfig& cfg_;
  const SpineAssignment& sa_;
  long budget_;
  long explored_ = 0;
  std::vector<std::vector<SlotUse>> table_;
  PresentationInvolution result_;
};

}  // namespace

std::optional<PresentationInvolution> hyperelliptic_involution_search(const MulticurveConfig& cfg,
                                                                      const SpineAssignment& sa, long budget) {
  require_valid(cfg, sa);
  return InvolutionSearch(cfg, sa, budget).run();
}

}  // namespace ttlab
