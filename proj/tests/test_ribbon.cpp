#include <doctest.h>

#include <random>

#include "support.hpp"
#include "ttlab/errors.hpp"
#include "ttlab/ribbon.hpp"

using namespace ttlab;

namespace {

// Exhaustive search for half-edge signs alternating across edges and around vertices.
bool co_orientable_oracle(const MetricRibbonGraph& g) {
  const int n = g.num_half_edges();
  for (uint32_t bits = 0; bits < (1u << n); ++bits) {
    bool ok = true;
    for (int h = 0; h < n && ok; ++h) {
      int s = (bits >> h) & 1;
      ok = s != static_cast<int>((bits >> g.iota(h)) & 1) && s != static_cast<int>((bits >> g.sigma(h)) & 1);
    }
    if (ok) return true;
  }
  return false;
}

std::vector<int> random_pairing(std::mt19937_64& rng, int valence) {
  std::vector<int> slots(valence);
  std::iota(slots.begin(), slots.end(), 0);
  std::shuffle(slots.begin(), slots.end(), rng);
  std::vector<int> p(valence);
  for (int k = 0; k < valence; k += 2) p[slots[k]] = slots[k + 1], p[slots[k + 1]] = slots[k];
  return p;
}

Rational random_length(std::mt19937_64& rng) { return ratio(1 + support::uniform(rng, 12), 1 + support::uniform(rng, 4)); }

}  // namespace

TEST_CASE("pants spine realises its boundary lengths") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    Rational a = random_length(rng), b = random_length(rng), c = random_length(rng);
    if (trial % 3 == 0) c = a + b;
    auto ps = pants_spine(a, b, c);
    const Rational in[3] = {a, b, c};
    for (int k = 0; k < 3; ++k) CHECK(ps.graph.faces()[ps.face_of_boundary[k]].perimeter == in[k]);
    for (const auto& e : ps.graph.edges()) CHECK(e.length > 0);
    char expect = support::pants_type(a, b, c);
    CHECK(std::toupper(to_string(ps.kind)[0]) == expect);
    if (expect == 'N') {
      CHECK(ps.graph.num_vertices() == 1);
      CHECK(cone_orders(ps.graph) == std::vector<int>{2});
    } else {
      CHECK(ps.graph.num_vertices() == 2);
      CHECK(cone_orders(ps.graph) == std::vector<int>{1, 1});
    }
    CHECK(ps.graph.genus() == 0);

    // Edge lengths are linear in the boundary lengths.
    auto scaled = pants_spine(3 * a, 3 * b, 3 * c);
    CHECK(scaled.graph == ps.graph.scaled(3));
  }
}

TEST_CASE("nabla is the co-orientable pants spine") {
  CHECK(co_orientable(pants_spine(1, 2, 3).graph));
  CHECK_FALSE(co_orientable(pants_spine(1, 1, 1).graph));
  CHECK_FALSE(co_orientable(pants_spine(1, 1, 5).graph));
}

TEST_CASE("co-orientability matches exhaustive sign search") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    int valence = 4 + 2 * support::uniform(rng, 3);
    auto g = single_vertex_graph(valence, random_pairing(rng, valence), std::vector<Rational>(valence / 2, Rational(1)));
    CHECK(co_orientable(g) == co_orientable_oracle(g));
    CHECK(face_coorientation(g).has_value() == co_orientable(g));
  }
  for (int p = 3; p <= 7; ++p) {
    auto g = plumbing_fixture(p, 2);
    CHECK(co_orientable(g) == co_orientable_oracle(g));
    CHECK(co_orientable(g) == (p % 2 == 0));
  }
}

TEST_CASE("faces partition the half-edges") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    int valence = 4 + 2 * support::uniform(rng, 4);
    std::vector<Rational> lengths;
    for (int e = 0; e < valence / 2; ++e) lengths.push_back(random_length(rng));
    auto g = single_vertex_graph(valence, random_pairing(rng, valence), lengths);
    std::vector<int> seen(g.num_half_edges(), 0);
    Rational total = 0;
    for (int f = 0; f < g.num_faces(); ++f) {
      const auto& face = g.faces()[f];
      CHECK(face.half_edges.front() == *std::min_element(face.half_edges.begin(), face.half_edges.end()));
      Rational offset = 0;
      for (int h : face.half_edges) {
        ++seen[h];
        CHECK(g.face_of(h) == f);
        CHECK(g.face_offset(h) == offset);
        offset += g.half_edge_length(h);
      }
      CHECK(offset == face.perimeter);
      total += face.perimeter;
    }
    CHECK(std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; }));
    CHECK(total == 2 * g.total_length());
    CHECK(g.num_vertices() - g.num_edges() + g.num_faces() == 2 - 2 * g.genus());
  }
}

TEST_CASE("plumbing fixture shape") {
  for (int p = 3; p <= 8; ++p) {
    auto g = plumbing_fixture(p, 4);
    CHECK(g.num_vertices() == 2);
    CHECK(g.num_faces() == p);
    CHECK(g.genus() == 0);
    CHECK(cone_orders(g) == std::vector<int>{p - 2, p - 2});
    for (int k = 0; k < p; ++k) CHECK(g.faces()[g.face_of(k)].perimeter == 4);
  }
}

TEST_CASE("malformed graphs are rejected") {
  CHECK_THROWS_AS(MetricRibbonGraph({{0, 1, 2}}, {{0, 1, Rational(1)}}), Error);
  CHECK_THROWS_AS(MetricRibbonGraph({{0, 1}, {2, 3}}, {{0, 2, Rational(1)}, {1, 3, Rational(0)}}), Error);
  CHECK_THROWS_AS(MetricRibbonGraph({{0, 1}, {1, 2}}, {{0, 1, Rational(1)}}), Error);
  CHECK_THROWS_AS(single_vertex_graph(5, {1, 0, 3, 2, 4}, {1, 1}), Error);
  CHECK_THROWS_AS(cone_orders(MetricRibbonGraph({{0, 1}}, {{0, 1, Rational(1)}})), Error);
}

TEST_CASE("assignment validation") {
  auto cfg = enumerate_pants_configs(2)[0];
  auto sa = pants_assignment(cfg, {1, 1, 1});
  CHECK(validate_assignment(cfg, sa).ok());

  auto bad = sa;
  bad.spines.pop_back();
  bad.face_to_slot.pop_back();
  CHECK(validate_assignment(cfg, bad).has(AssignmentIssue::PieceCountMismatch));

  bad = sa;
  bad.face_to_slot[0] = {0, 0, 1};
  CHECK(validate_assignment(cfg, bad).has(AssignmentIssue::FaceSlotNotBijective));

  bad = sa;
  bad.spines[0] = pants_spine(1, 1, ratio(3, 2)).graph;
  CHECK(validate_assignment(cfg, bad).has(AssignmentIssue::LengthMismatch));

  bad = sa;
  bad.spines[0] = single_vertex_graph(4, {2, 3, 0, 1}, {1, 1});
  bad.face_to_slot[0] = {0};
  auto r = validate_assignment(cfg, bad);
  CHECK((r.has(AssignmentIssue::GenusMismatch) || r.has(AssignmentIssue::FaceCountMismatch)));
  CHECK_THROWS_AS(require_valid(cfg, bad), Error);
}

TEST_CASE("joint orientation needs co-orientable pieces") {
  for (const auto& inst : support::random_instances(14, 100)) {
    auto jo = jointly_orientable(inst.sa, inst.cfg);
    bool all_co = std::all_of(inst.sa.spines.begin(), inst.sa.spines.end(), [](const auto& g) { return co_orientable(g); });
    if (jo.jointly_orientable) CHECK(all_co);
    CHECK(jo.epsilon == (jo.jointly_orientable ? 1 : -1));
  }
}
