#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "ttlab/errors.hpp"
#include "ttlab/flat_surface.hpp"

namespace ttlab {

double SaddleConnection::length() const { return std::hypot(x, y); }

namespace {

struct FaceInfo {
  int piece = 0;
  int face = 0;
  int curve = 0;
  bool side_a = true;
  double perimeter = 0.0;
  std::vector<int> half_edges;
  std::vector<double> offsets;
  std::vector<double> lengths;
};

struct CylinderInfo {
  double circumference = 0.0, height = 0.0, twist = 0.0;
  int face_a = 0, face_b = 0;  // indices into the face table
};

// A family of parallel trajectories with slopes in (k_lo, k_hi). Inside cylinder
// `cylinder`, the entry x-coordinate is x0 + dx * k.
struct Branch {
  int cylinder;
  bool upward;
  double x0, dx;
  double k_lo, k_hi;
  bool open_lo = false, open_hi = false;  // endpoints already ended at a corner
  double height_before;
  int start_face;
  int start_index;
  std::vector<int> crossings;
  std::vector<std::pair<int, int>> edges_crossed;  // (piece, edge)
};

class Unfolder {
 public:
  Unfolder(const NumericSurface& q, double radius, long cap) : q_(q), radius_(radius), cap_(cap) {
    face_index_.resize(q.config.num_pieces());
    for (int j = 0; j < q.config.num_pieces(); ++j) {
      const auto& g = q.spines.spines[j];
      face_index_[j].resize(g.num_faces());
      for (int f = 0; f < g.num_faces(); ++f) {
        FaceInfo info;
        info.piece = j;
        info.face = f;
        info.perimeter = 0.0;
        for (int h : g.faces()[f].half_edges) {
          info.half_edges.push_back(h);
          info.offsets.push_back(q.face_offset(j, h));
          info.lengths.push_back(q.edge_length(j, g.edge_of(h)));
        }
        info.perimeter = info.offsets.back() + info.lengths.back();
        face_index_[j][f] = static_cast<int>(faces_.size());
        faces_.push_back(std::move(info));
      }
    }
    cylinders_.resize(q.num_cylinders());
    for (int i = 0; i < q.num_cylinders(); ++i) {
      const auto& gl = q.config.gluing[i];
      auto& c = cylinders_[i];
      c.circumference = q.circumference(i);
      c.height = q.heights[i];
      c.twist = q.twists[i];
      c.face_a = face_index_[gl.side_a.piece][face_at_slot(q.spines, gl.side_a)];
      c.face_b = face_index_[gl.side_b.piece][face_at_slot(q.spines, gl.side_b)];
      faces_[c.face_a].curve = i;
      faces_[c.face_a].side_a = true;
      faces_[c.face_b].curve = i;
      faces_[c.face_b].side_a = false;
    }
  }

  SaddleSearchResult run() {
    for (int j = 0; j < q_.config.num_pieces(); ++j) {
      const auto& g = q_.spines.spines[j];
      for (int e = 0; e < g.num_edges(); ++e) {
        const auto& ed = g.edges()[e];
        SaddleConnection sc;
        sc.x = q_.edge_length(j, e);
        sc.y = 0.0;
        sc.start = {j, g.vertex_of(ed.first)};
        sc.end = {j, g.vertex_of(ed.second)};
        sc.start_corner = {j, ed.first};
        sc.end_corner = {j, ed.second};
        sc.edge = {j, e};
        if (sc.x <= radius_) result_.connections.push_back(sc);
      }
    }

    for (int f = 0; f < static_cast<int>(faces_.size()); ++f) {
      const auto& face = faces_[f];
      const auto& cyl = cylinders_[face.curve];
      if (cyl.height > radius_) continue;
      double k_max = std::sqrt(radius_ * radius_ - cyl.height * cyl.height) / cyl.height;
      for (int m = 0; m < static_cast<int>(face.half_edges.size()); ++m) {
        Branch b;
        b.cylinder = face.curve;
        b.upward = face.side_a;
        b.x0 = face.side_a ? face.offsets[m] : cyl.twist - face.offsets[m];
        b.dx = 0.0;
        b.k_lo = -k_max;
        b.k_hi = k_max;
        b.height_before = 0.0;
        b.start_face = f;
        b.start_index = m;
        explore(b);
        if (!result_.complete) break;
      }
      if (!result_.complete) break;
    }

    std::sort(result_.connections.begin(), result_.connections.end(), [](const auto& a, const auto& b) {
      double la = a.length(), lb = b.length();
      if (std::abs(la - lb) > 1e-12) return la < lb;
      return std::tie(a.start_corner, a.end_corner, a.crossings) < std::tie(b.start_corner, b.end_corner, b.crossings);
    });
    return std::move(result_);
  }

 private:
  void record(const Branch& b, double k, double total_height, int end_face, int end_index) {
    const auto& sf = faces_[b.start_face];
    const auto& ef = faces_[end_face];
    const auto& gs = q_.spines.spines[sf.piece];
    const auto& ge = q_.spines.spines[ef.piece];
    SaddleConnection sc;
    sc.x = k * total_height;
    sc.y = total_height;
    sc.start_corner = {sf.piece, sf.half_edges[b.start_index]};
    sc.end_corner = {ef.piece, ef.half_edges[end_index]};
    sc.start = {sf.piece, gs.vertex_of(sc.start_corner.second)};
    sc.end = {ef.piece, ge.vertex_of(sc.end_corner.second)};
    sc.crossings = b.crossings;
    sc.crossings.push_back(b.cylinder);

    // Each connection is met once from each end; keep the canonical orientation.
    auto forward = std::make_tuple(sc.start_corner, sc.end_corner, b.edges_crossed);
    auto reversed_edges = b.edges_crossed;
    std::reverse(reversed_edges.begin(), reversed_edges.end());
    auto backward = std::make_tuple(sc.end_corner, sc.start_corner, reversed_edges);
    auto key = std::make_tuple(std::min(forward, backward), std::llround(sc.x * 1e7), std::llround(sc.y * 1e7));
    if (seen_.emplace(key, result_.connections.size()).second) result_.connections.push_back(std::move(sc));
  }

  void explore(const Branch& b) {
    if (++result_.unfolded > cap_) {
      result_.complete = false;
      return;
    }
    const auto& cyl = cylinders_[b.cylinder];
    const double total = b.height_before + cyl.height;
    if (total > radius_) return;
    const double k_max = std::sqrt(std::max(0.0, radius_ * radius_ - total * total)) / total;
    const double lo = std::max(b.k_lo, -k_max), hi = std::min(b.k_hi, k_max);
    if (lo > hi) return;
    const bool open_lo = b.open_lo && b.k_lo >= -k_max, open_hi = b.open_hi && b.k_hi <= k_max;

    // Landing coordinate on the exit face: u(k) = alpha + beta * k.
    const int exit_face = b.upward ? cyl.face_b : cyl.face_a;
    const auto& face = faces_[exit_face];
    double alpha, beta;
    if (b.upward) {
      alpha = cyl.twist - b.x0;
      beta = -(b.dx + cyl.height);
    } else {
      alpha = b.x0;
      beta = b.dx - cyl.height;
    }
    const double u_lo = std::min(alpha + beta * lo, alpha + beta * hi);
    const double u_hi = std::max(alpha + beta * lo, alpha + beta * hi);
    const double P = face.perimeter;

    // Corner hits inside [u_lo, u_hi], as slopes.
    struct Hit {
      double k;
      int index;
    };
    std::vector<Hit> hits;
    const long n_first = static_cast<long>(std::floor(u_lo / P)) - 1;
    const long n_last = static_cast<long>(std::floor(u_hi / P)) + 1;
    for (long n = n_first; n <= n_last; ++n) {
      for (int m = 0; m < static_cast<int>(face.offsets.size()); ++m) {
        double pos = face.offsets[m] + static_cast<double>(n) * P;
        if (pos < u_lo - 1e-12 || pos > u_hi + 1e-12) continue;
        double k = (pos - alpha) / beta;
        if (k < lo - 1e-12 || k > hi + 1e-12) continue;
        if ((open_lo && k < lo + 1e-12) || (open_hi && k > hi - 1e-12)) continue;
        hits.push_back({k, m});
      }
    }
    std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& c) { return a.k < c.k; });
    for (const auto& hit : hits) record(b, hit.k, total, exit_face, hit.index);

    // Open sub-intervals between consecutive hits each cross a single edge.
    std::vector<double> cuts{lo};
    for (const auto& hit : hits) cuts.push_back(hit.k);
    cuts.push_back(hi);
    for (size_t s = 0; s + 1 < cuts.size(); ++s) {
      double a = cuts[s], c = cuts[s + 1];
      if (c - a <= 1e-13) continue;
      cross_edge(b, total, exit_face, alpha, beta, a, c, s > 0 || open_lo, s + 2 < cuts.size() || open_hi);
      if (!result_.complete) return;
    }
  }

  void cross_edge(const Branch& b, double total, int exit_face, double alpha, double beta, double a, double c,
                  bool open_a, bool open_c) {
    const auto& face = faces_[exit_face];
    const double P = face.perimeter;
    const double mid = 0.5 * (a + c);
    const double u_mid = alpha + beta * mid;
    const double wraps = std::floor(u_mid / P);
    const double local = u_mid - wraps * P;
    int m = static_cast<int>(std::upper_bound(face.offsets.begin(), face.offsets.end(), local) - face.offsets.begin()) - 1;
    m = std::clamp(m, 0, static_cast<int>(face.offsets.size()) - 1);

    const auto& g = q_.spines.spines[face.piece];
    const int h = face.half_edges[m];
    const int partner = g.iota(h);
    const int next_face = face_index_[face.piece][g.face_of(partner)];
    const auto& nf = faces_[next_face];
    const double partner_offset = q_.face_offset(face.piece, partner);
    const double len = face.lengths[m];

    // Position on the partner face: offset(partner) + len - w, where w = u - offset(h) - wraps*P.
    const double base = partner_offset + len + face.offsets[m] + wraps * P - alpha;
    const double slope = -beta;
    const auto& next = cylinders_[nf.curve];

    Branch child;
    child.cylinder = nf.curve;
    child.upward = nf.side_a;
    if (nf.side_a) {
      child.x0 = base;
      child.dx = slope;
    } else {
      child.x0 = next.twist - base;
      child.dx = -slope;
    }
    child.k_lo = a;
    child.k_hi = c;
    child.open_lo = open_a;
    child.open_hi = open_c;
    child.height_before = total;
    child.start_face = b.start_face;
    child.start_index = b.start_index;
    child.crossings = b.crossings;
    child.crossings.push_back(b.cylinder);
    child.edges_crossed = b.edges_crossed;
    child.edges_crossed.emplace_back(face.piece, g.edge_of(h));
    explore(child);
  }

  const NumericSurface& q_;
  double radius_;
  long cap_;
  std::vector<FaceInfo> faces_;
  std::vector<std::vector<int>> face_index_;
  std::vector<CylinderInfo> cylinders_;
  SaddleSearchResult result_;
  using Ends = std::tuple<std::pair<int, int>, std::pair<int, int>, std::vector<std::pair<int, int>>>;
  std::map<std::tuple<Ends, long long, long long>, size_t> seen_;
};

}  // namespace

SaddleSearchResult saddle_connections_up_to(const NumericSurface& q, double radius, long cap) {
  if (!(radius > 0)) throw Error(ErrorCode::RadiusTooSmall, "radius must be positive");
  return Unfolder(q, radius, cap).run();
}

}  // namespace ttlab
