#include "ttlab/flat_surface.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "ttlab/errors.hpp"

namespace ttlab {

namespace {

template <class Scalar>
Scalar from_rational(const Rational& r);
template <>
Rational from_rational<Rational>(const Rational& r) {
  return r;
}
template <>
double from_rational<double>(const Rational& r) {
  return r.get_d();
}

constexpr double kTolerance = 1e-9;

bool same(const Rational& a, const Rational& b) { return a == b; }
bool same(double a, double b) { return std::abs(a - b) <= kTolerance; }

bool same_mod(const Rational& a, const Rational& b, const Rational& m) { return wrap(Rational(a - b), m) == 0; }
bool same_mod(double a, double b, double m) {
  double d = wrap(a - b, m);
  return d <= kTolerance || m - d <= kTolerance;
}

}  // namespace

template <class Scalar>
Scalar BasicFlatSurface<Scalar>::circumference(int curve) const {
  return scale_x * from_rational<Scalar>(base_circumferences[curve]);
}

template <class Scalar>
Scalar BasicFlatSurface<Scalar>::edge_length(int piece, int edge) const {
  return scale_x * from_rational<Scalar>(spines.spines[piece].length(edge));
}

template <class Scalar>
Scalar BasicFlatSurface<Scalar>::face_offset(int piece, int half_edge) const {
  return scale_x * from_rational<Scalar>(spines.spines[piece].face_offset(half_edge));
}

ExactSurface build_surface(const MulticurveConfig& cfg, const SpineAssignment& sa, std::vector<Rational> heights,
                           std::vector<Rational> twists, bool normalize) {
  require_valid(cfg, sa);
  const int n = cfg.num_curves();
  if (static_cast<int>(heights.size()) != n) throw Error(ErrorCode::NonPositiveHeight, "one height per curve required");
  for (const auto& h : heights)
    if (h <= 0) throw Error(ErrorCode::NonPositiveHeight, "cylinder heights must be positive");
  if (twists.empty()) twists.assign(n, Rational(0));
  if (static_cast<int>(twists.size()) != n) throw Error(ErrorCode::BadIndex, "one twist per curve required");

  ExactSurface q;
  q.config = cfg;
  q.spines = sa;
  q.base_circumferences = curve_lengths(cfg, sa);
  q.heights = std::move(heights);
  if (normalize) {
    Rational a = 0;
    for (int i = 0; i < n; ++i) a += q.base_circumferences[i] * q.heights[i];
    for (auto& h : q.heights) h /= a;
  }
  q.twists.resize(n);
  for (int i = 0; i < n; ++i) q.twists[i] = wrap(twists[i], q.base_circumferences[i]);
  return q;
}

NumericSurface to_numeric(const ExactSurface& q) {
  NumericSurface out;
  out.config = q.config;
  out.spines = q.spines;
  out.base_circumferences = q.base_circumferences;
  out.scale_x = q.scale_x.get_d();
  out.scale_y = q.scale_y.get_d();
  for (const auto& h : q.heights) out.heights.push_back(h.get_d());
  for (const auto& t : q.twists) out.twists.push_back(t.get_d());
  return out;
}

template <class Scalar>
Scalar area(const BasicFlatSurface<Scalar>& q) {
  Scalar total = Scalar(0);
  for (int i = 0; i < q.num_cylinders(); ++i) total += q.circumference(i) * q.heights[i];
  return total;
}

ExactSurface geodesic_flow(const ExactSurface& q, const Rational& lambda) {
  if (lambda <= 0) throw Error(ErrorCode::OutOfRange, "geodesic flow scale must be positive");
  ExactSurface out = q;
  out.scale_x *= lambda;
  out.scale_y /= lambda;
  for (auto& h : out.heights) h /= lambda;
  for (auto& t : out.twists) t *= lambda;
  return out;
}

NumericSurface geodesic_flow(const NumericSurface& q, double t) {
  NumericSurface out = q;
  const double up = std::exp(t), down = std::exp(-t);
  out.scale_x *= up;
  out.scale_y *= down;
  for (auto& h : out.heights) h *= down;
  for (auto& tw : out.twists) tw *= up;
  return out;
}

template <class Scalar>
BasicFlatSurface<Scalar> cylinder_twist(const BasicFlatSurface<Scalar>& q, int curve, const Scalar& s) {
  if (curve < 0 || curve >= q.num_cylinders()) throw Error(ErrorCode::BadIndex, "no curve " + std::to_string(curve));
  BasicFlatSurface<Scalar> out = q;
  Scalar moved = out.twists[curve] + s * out.heights[curve];
  out.twists[curve] = wrap(moved, out.circumference(curve));
  return out;
}

template <class Scalar>
BasicFlatSurface<Scalar> horocycle_flow(const BasicFlatSurface<Scalar>& q, const Scalar& s) {
  BasicFlatSurface<Scalar> out = q;
  for (int i = 0; i < q.num_cylinders(); ++i) {
    Scalar moved = out.twists[i] + s * out.heights[i];
    out.twists[i] = wrap(moved, out.circumference(i));
  }
  return out;
}

template <class Scalar>
PeriodData<Scalar> horizontal_period_data(const BasicFlatSurface<Scalar>& q) {
  PeriodData<Scalar> data;
  for (int j = 0; j < q.config.num_pieces(); ++j)
    for (int e = 0; e < q.spines.spines[j].num_edges(); ++e) data.edges.push_back({j, e, q.edge_length(j, e), Scalar(0)});
  for (int i = 0; i < q.num_cylinders(); ++i) data.crossings.push_back({-1, i, q.twists[i], q.heights[i]});
  return data;
}

namespace {

// Backtracking search for an orientation-preserving cell relabeling between two surfaces.
template <class Scalar>
class IsomorphismSearch {
 public:
  IsomorphismSearch(const BasicFlatSurface<Scalar>& a, const BasicFlatSurface<Scalar>& b)
      : a_(a), b_(b), piece_map_(a.config.num_pieces(), -1), used_(b.config.num_pieces(), 0),
        half_map_(a.config.num_pieces()) {}

  bool run() {
    if (a_.config.num_pieces() != b_.config.num_pieces() || a_.config.num_curves() != b_.config.num_curves())
      return false;
    if (a_.config.genus != b_.config.genus) return false;
    return assign(0);
  }

 private:
  bool map_piece(int ja, int jb, int seed) {
    const auto& ga = a_.spines.spines[ja];
    const auto& gb = b_.spines.spines[jb];
    if (ga.num_half_edges() != gb.num_half_edges() || ga.num_vertices() != gb.num_vertices()) return false;
    std::vector<int> map(ga.num_half_edges(), -1), inverse(gb.num_half_edges(), -1);
    std::vector<int> stack{0};
    map[0] = seed;
    inverse[seed] = 0;
    while (!stack.empty()) {
      int h = stack.back();
      stack.pop_back();
      int hb = map[h];
      if (!same(a_.edge_length(ja, ga.edge_of(h)), b_.edge_length(jb, gb.edge_of(hb)))) return false;
      for (auto [next_a, next_b] : {std::pair{ga.sigma(h), gb.sigma(hb)}, std::pair{ga.iota(h), gb.iota(hb)}}) {
        if (map[next_a] == -1) {
          if (inverse[next_b] != -1) return false;
          map[next_a] = next_b;
          inverse[next_b] = next_a;
          stack.push_back(next_a);
        } else if (map[next_a] != next_b) {
          return false;
        }
      }
    }
    if (std::find(map.begin(), map.end(), -1) != map.end()) return false;
    half_map_[ja] = std::move(map);
    return true;
  }

  bool assign(int ja) {
    if (ja == a_.config.num_pieces()) return check_cylinders();
    for (int jb = 0; jb < b_.config.num_pieces(); ++jb) {
      if (used_[jb] || a_.config.pieces[ja] != b_.config.pieces[jb]) continue;
      for (int seed = 0; seed < b_.spines.spines[jb].num_half_edges(); ++seed) {
        if (!map_piece(ja, jb, seed)) continue;
        used_[jb] = 1;
        piece_map_[ja] = jb;
        if (assign(ja + 1)) return true;
        used_[jb] = 0;
        piece_map_[ja] = -1;
      }
    }
    return false;
  }

  // Where the marked corner of the face at `slot` in a lands in b: (slot in b, offset).
  std::pair<SlotRef, Scalar> image_of_marked(const SlotRef& slot) const {
    const auto& ga = a_.spines.spines[slot.piece];
    int face = face_at_slot(a_.spines, slot);
    int h = half_map_[slot.piece][ga.faces()[face].half_edges.front()];
    int jb = piece_map_[slot.piece];
    const auto& gb = b_.spines.spines[jb];
    SlotRef target{jb, b_.spines.face_to_slot[jb][gb.face_of(h)]};
    return {target, b_.face_offset(jb, h)};
  }

  bool check_cylinders() const {
    auto table = slot_table(b_.config);
    std::vector<char> hit(b_.config.num_curves(), 0);
    for (int i = 0; i < a_.config.num_curves(); ++i) {
      auto [slot_a, delta_a] = image_of_marked(a_.config.gluing[i].side_a);
      auto [slot_b, delta_b] = image_of_marked(a_.config.gluing[i].side_b);
      SlotUse use_a = table[slot_a.piece][slot_a.slot];
      SlotUse use_b = table[slot_b.piece][slot_b.slot];
      if (use_a.curve != use_b.curve || use_a.side_a == use_b.side_a) return false;
      int j = use_a.curve;
      if (hit[j]) return false;
      hit[j] = 1;
      if (!same(a_.heights[i], b_.heights[j])) return false;
      if (!same(a_.circumference(i), b_.circumference(j))) return false;
      Scalar expected = a_.twists[i] + delta_a + delta_b;
      if (!same_mod(expected, b_.twists[j], b_.circumference(j))) return false;
    }
    return true;
  }

  const BasicFlatSurface<Scalar>& a_;
  const BasicFlatSurface<Scalar>& b_;
  std::vector<int> piece_map_;
  std::vector<char> used_;
  std::vector<std::vector<int>> half_map_;
};

}  // namespace

template <class Scalar>
bool is_isomorphic(const BasicFlatSurface<Scalar>& a, const BasicFlatSurface<Scalar>& b) {
  return IsomorphismSearch<Scalar>(a, b).run();
}

template struct BasicFlatSurface<Rational>;
template struct BasicFlatSurface<double>;
template Rational area(const ExactSurface&);
template double area(const NumericSurface&);
template ExactSurface horocycle_flow(const ExactSurface&, const Rational&);
template NumericSurface horocycle_flow(const NumericSurface&, const double&);
template ExactSurface cylinder_twist(const ExactSurface&, int, const Rational&);
template NumericSurface cylinder_twist(const NumericSurface&, int, const double&);
template PeriodData<Rational> horizontal_period_data(const ExactSurface&);
template PeriodData<double> horizontal_period_data(const NumericSurface&);
template bool is_isomorphic(const ExactSurface&, const ExactSurface&);
template bool is_isomorphic(const NumericSurface&, const NumericSurface&);

}  // namespace ttlab
