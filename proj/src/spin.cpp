#include <algorithm>
#include <deque>
#include <functional>
#include <random>

#include "ttlab/classify.hpp"
#include "ttlab/errors.hpp"

namespace ttlab {

namespace {

using Bits = std::vector<uint8_t>;

// Crossing of a ribbon edge by an upward transversal: leaves cylinder `from` through its
// top and enters cylinder `to` through its bottom.
struct Arc {
  int from, to;
  int piece;
  int edge;
  int h_top;  // half-edge on the face at the top of `from`
  int h_bot;  // half-edge on the face at the bottom of `to`
};

struct FaceSide {
  int curve;
  bool side_a;
};

class TransversalBuilder {
 public:
  TransversalBuilder(const MulticurveConfig& cfg, const SpineAssignment& sa, unsigned seed)
      : cfg_(cfg), sa_(sa), rng_(seed), seed_(seed) {
    auto jo = jointly_orientable(sa, cfg);
    if (!jo.jointly_orientable) throw Error(ErrorCode::NotAbelianSquare, "horizontal foliation is not orientable");
    bits_ = jo.cylinder_bits;
    auto table = slot_table(cfg);
    sides_.resize(cfg.num_pieces());
    for (int j = 0; j < cfg.num_pieces(); ++j) {
      const auto& g = sa.spines[j];
      for (int f = 0; f < g.num_faces(); ++f) {
        SlotUse use = table[j][sa.face_to_slot[j][f]];
        sides_[j].push_back({use.curve, use.side_a});
      }
    }
    for (int j = 0; j < cfg.num_pieces(); ++j) {
      const auto& g = sa.spines[j];
      for (int e = 0; e < g.num_edges(); ++e) {
        int h0 = g.edges()[e].first, h1 = g.edges()[e].second;
        FaceSide s0 = sides_[j][g.face_of(h0)], s1 = sides_[j][g.face_of(h1)];
        bool bottom0 = field_bottom(s0), bottom1 = field_bottom(s1);
        if (bottom0 == bottom1) throw Error(ErrorCode::InvalidSurface, "edge with the field on the same side twice");
        if (bottom0) arcs_.push_back({s1.curve, s0.curve, j, e, h1, h0});
        else arcs_.push_back({s0.curve, s1.curve, j, e, h0, h1});
      }
    }
    out_.resize(cfg.num_curves());
    for (int a = 0; a < static_cast<int>(arcs_.size()); ++a) out_[arcs_[a].from].push_back(a);
    if (seed_ != 0)
      for (auto& list : out_) std::shuffle(list.begin(), list.end(), rng_);
  }

  WindingForm build() {
    const int n = cfg_.num_curves();
    const int target = static_cast<int>(arcs_.size()) - n + 1;
    std::vector<int> order(arcs_.size());
    for (int a = 0; a < static_cast<int>(order.size()); ++a) order[a] = a;
    if (seed_ != 0) std::shuffle(order.begin(), order.end(), rng_);

    for (int a : order) {
      if (static_cast<int>(cycles_.size()) == target) break;
      try_add(shortest_cycle_through(a));
    }
    if (static_cast<int>(cycles_.size()) < target) enumerate_more(target);

    WindingForm form;
    form.cores = n;
    const int m = n + static_cast<int>(cycles_.size());
    form.q.assign(m, 1);
    form.intersections.assign(m, Bits(m, 0));
    const int K = static_cast<int>(cycles_.size());
    std::vector<std::vector<Segment>> segments(K);
    for (int k = 0; k < K; ++k) segments[k] = realize(cycles_[k], ratio(k + 1, K + 1));
    for (int k = 0; k < K; ++k)
      for (const auto& s : segments[k]) form.intersections[s.curve][n + k] = form.intersections[n + k][s.curve] = 1;
    for (int k = 0; k < K; ++k)
      for (int l = k + 1; l < K; ++l) {
        int count = 0;
        for (const auto& s : segments[k])
          for (const auto& t : segments[l])
            if (s.curve == t.curve) count += crossings(s, t);
        form.intersections[n + k][n + l] = form.intersections[n + l][n + k] = count & 1;
      }
    return form;
  }

 private:
  struct Segment {
    int curve;
    Rational bottom, top;  // chart x-positions on side A and side B
  };

  bool field_bottom(const FaceSide& s) const { return s.side_a == (bits_[s.curve] == 0); }

  std::vector<int> shortest_cycle_through(int a) {
    const int start = arcs_[a].to, goal = arcs_[a].from;
    std::vector<int> via(cfg_.num_curves(), -1);
    std::vector<char> seen(cfg_.num_curves(), 0);
    std::deque<int> queue{start};
    seen[start] = 1;
    while (!queue.empty() && !seen[goal]) {
      int u = queue.front();
      queue.pop_front();
      for (int b : out_[u]) {
        int v = arcs_[b].to;
        if (seen[v]) continue;
        seen[v] = 1;
        via[v] = b;
        queue.push_back(v);
      }
    }
    std::vector<int> path;
    for (int v = goal; v != start; v = arcs_[via[v]].from) path.push_back(via[v]);
    std::reverse(path.begin(), path.end());
    std::vector<int> cycle{a};
    cycle.insert(cycle.end(), path.begin(), path.end());
    return cycle;
  }

  bool try_add(const std::vector<int>& cycle) {
    Bits v(arcs_.size(), 0);
    for (int a : cycle) v[a] ^= 1;
    for (const auto& [pivot, row] : reduced_)
      if (v[pivot]) std::transform(v.begin(), v.end(), row.begin(), v.begin(), std::bit_xor<>());
    auto it = std::find(v.begin(), v.end(), 1);
    if (it == v.end()) return false;
    reduced_.emplace_back(static_cast<int>(it - v.begin()), std::move(v));
    cycles_.push_back(cycle);
    return true;
  }

  // Depth-first enumeration of simple directed cycles, smallest start node first.
  void enumerate_more(int target) {
    const int n = cfg_.num_curves();
    std::vector<char> on_path(n, 0);
    std::vector<int> path;
    long budget = 200000;
    std::function<void(int, int)> dfs = [&](int root, int u) {
      if (static_cast<int>(cycles_.size()) == target || --budget < 0) return;
      for (int b : out_[u]) {
        int v = arcs_[b].to;
        if (v < root) continue;
        path.push_back(b);
        if (v == root) try_add(path);
        else if (!on_path[v]) {
          on_path[v] = 1;
          dfs(root, v);
          on_path[v] = 0;
        }
        path.pop_back();
      }
    };
    for (int root = 0; root < n; ++root) {
      on_path[root] = 1;
      dfs(root, root);
      on_path[root] = 0;
    }
    if (static_cast<int>(cycles_.size()) < target)
      throw Error(ErrorCode::SearchBudgetExceeded, "could not complete the transversal cycle basis");
  }

  Rational chart_x(int piece, int h, int edge, const Rational& fraction, bool& on_side_a) const {
    const auto& g = sa_.spines[piece];
    const auto& ed = g.edges()[edge];
    Rational along = h == ed.first ? fraction : Rational(1 - fraction);
    Rational u = g.face_offset(h) + along * g.length(edge);
    on_side_a = sides_[piece][g.face_of(h)].side_a;
    return on_side_a ? u : Rational(-u);
  }

  std::vector<Segment> realize(const std::vector<int>& cycle, const Rational& fraction) const {
    std::vector<Segment> out;
    const int len = static_cast<int>(cycle.size());
    for (int k = 0; k < len; ++k) {
      const Arc& in = arcs_[cycle[k]];
      const Arc& next = arcs_[cycle[(k + 1) % len]];
      bool a_in = false, a_out = false;
      Rational x_in = chart_x(in.piece, in.h_bot, in.edge, fraction, a_in);
      Rational x_out = chart_x(next.piece, next.h_top, next.edge, fraction, a_out);
      out.push_back({in.to, a_in ? x_in : x_out, a_in ? x_out : x_in});
    }
    return out;
  }

  int crossings(const Segment& s, const Segment& t) const {
    Rational ell = 0;
    const auto& gl = cfg_.gluing[s.curve];
    const auto& g = sa_.spines[gl.side_a.piece];
    ell = g.faces()[face_at_slot(sa_, gl.side_a)].perimeter;
    mpz_class lo = floor_div(s.bottom - t.bottom, ell).get_num();
    mpz_class hi = floor_div(s.top - t.top, ell).get_num();
    mpz_class d = abs(lo - hi);
    return static_cast<int>(mpz_class(d % 2).get_si());
  }

  const MulticurveConfig& cfg_;
  const SpineAssignment& sa_;
  std::mt19937 rng_;
  unsigned seed_;
  std::vector<int> bits_;
  std::vector<std::vector<FaceSide>> sides_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> out_;
  std::vector<std::pair<int, Bits>> reduced_;
  std::vector<std::vector<int>> cycles_;
};

int pairing(const BitMatrix& J, const Bits& x, const Bits& y) {
  int s = 0;
  for (size_t k = 0; k < x.size(); ++k) {
    if (!x[k]) continue;
    for (size_t l = 0; l < y.size(); ++l) s ^= y[l] & J[k][l];
  }
  return s;
}

int evaluate(const WindingForm& form, const Bits& x) {
  int s = 0;
  const size_t m = x.size();
  for (size_t k = 0; k < m; ++k) {
    if (!x[k]) continue;
    s ^= form.q[k];
    for (size_t l = k + 1; l < m; ++l) s ^= x[l] & form.intersections[k][l];
  }
  return s;
}

}  // namespace

bool spin_defined(const MulticurveConfig& cfg, const SpineAssignment& sa) {
  if (!jointly_orientable(sa, cfg).jointly_orientable) return false;
  for (const auto& g : sa.spines)
    for (int k : cone_orders(g))
      if (k % 4 != 0) return false;
  return true;
}

WindingForm winding_form(const MulticurveConfig& cfg, const SpineAssignment& sa, unsigned basis_seed) {
  return TransversalBuilder(cfg, sa, basis_seed).build();
}

int arf_invariant(const WindingForm& form) {
  const size_t m = form.q.size();
  std::vector<Bits> pool;
  for (size_t k = 0; k < m; ++k) {
    Bits e(m, 0);
    e[k] = 1;
    pool.push_back(std::move(e));
  }
  int arf = 0;
  while (true) {
    int ia = -1, ib = -1;
    for (size_t i = 0; i < pool.size() && ia < 0; ++i)
      for (size_t j = i + 1; j < pool.size(); ++j)
        if (pairing(form.intersections, pool[i], pool[j])) {
          ia = static_cast<int>(i);
          ib = static_cast<int>(j);
          break;
        }
    if (ia < 0) break;
    Bits a = pool[ia], b = pool[ib];
    arf ^= evaluate(form, a) & evaluate(form, b);
    pool.erase(pool.begin() + ib);
    pool.erase(pool.begin() + ia);
    for (auto& w : pool) {
      int wb = pairing(form.intersections, w, b), wa = pairing(form.intersections, w, a);
      for (size_t k = 0; k < m; ++k) w[k] ^= (wb & a[k]) ^ (wa & b[k]);
    }
  }
  for (const auto& w : pool)
    if (evaluate(form, w)) throw Error(ErrorCode::InvalidSurface, "winding form does not vanish on the radical");
  return arf;
}

SpinParity spin_parity(const MulticurveConfig& cfg, const SpineAssignment& sa, unsigned basis_seed) {
  if (!jointly_orientable(sa, cfg).jointly_orientable)
    throw Error(ErrorCode::NotAbelianSquare, "horizontal foliation is not orientable");
  if (!spin_defined(cfg, sa))
    throw Error(ErrorCode::BadPartition, "spin parity needs every zero of the abelian differential to have even order");
  WindingForm form = winding_form(cfg, sa, basis_seed);
  if (rank_mod2(form.intersections) != 2 * cfg.genus)
    throw Error(ErrorCode::InvalidSurface, "transversals and cores do not span first homology");
  return arf_invariant(form) ? SpinParity::Odd : SpinParity::Even;
}

}  // namespace ttlab
