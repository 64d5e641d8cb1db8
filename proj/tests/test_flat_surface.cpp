#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "support.hpp"
#include "ttlab/errors.hpp"
#include "ttlab/flat_surface.hpp"

using namespace ttlab;

namespace {

ExactSurface random_surface(std::mt19937_64& rng, const support::Instance& inst) {
  std::vector<Rational> twists;
  for (int i = 0; i < inst.cfg.num_curves(); ++i) twists.push_back(ratio(support::uniform(rng, 50), 7));
  return build_surface(inst.cfg, inst.sa, inst.heights, twists, false);
}

using Key = std::tuple<std::pair<int, int>, std::pair<int, int>, std::vector<int>>;
std::set<Key> keys(const SaddleSearchResult& r) {
  std::set<Key> out;
  for (const auto& c : r.connections) out.insert({c.start_corner, c.end_corner, c.crossings});
  return out;
}

}  // namespace

TEST_CASE("normalisation gives unit area") {
  std::mt19937_64 rng(21);
  for (const auto& inst : support::random_instances(22, 20)) {
    auto q = build_surface(inst.cfg, inst.sa, inst.heights, {}, true);
    CHECK(area(q) == 1);
  }
}

TEST_CASE("dynamics contracts in exact arithmetic") {
  std::mt19937_64 rng(23);
  for (const auto& inst : support::random_instances(24, 100)) {
    ExactSurface q = random_surface(rng, inst);
    const Rational lambda = ratio(1 + support::uniform(rng, 9), 1 + support::uniform(rng, 9));
    const Rational s = ratio(support::uniform(rng, 21) - 10, 3);

    auto g = geodesic_flow(q, lambda);
    auto u = horocycle_flow(q, s);
    CHECK(area(g) == area(q));
    CHECK(area(u) == area(q));
    CHECK(area(cylinder_twist(q, 0, s)) == area(q));

    // g_t u_s g_{-t} = u_{e^{2t} s}
    auto conj = geodesic_flow(horocycle_flow(geodesic_flow(q, 1 / lambda), s), lambda);
    auto direct = horocycle_flow(q, Rational(lambda * lambda * s));
    CHECK(conj.twists == direct.twists);
    CHECK(conj.heights == direct.heights);
    CHECK(conj.scale_x == direct.scale_x);

    // u_s moves twists only.
    CHECK(u.heights == q.heights);
    CHECK(u.spines == q.spines);
    CHECK(u.scale_x == q.scale_x);

    // u_s is the product of the single-cylinder twists.
    ExactSurface composed = q;
    for (int i = 0; i < q.num_cylinders(); ++i) composed = cylinder_twist(composed, i, s);
    CHECK(composed.twists == u.twists);
    CHECK(composed.heights == u.heights);

    // Rational scales compose.
    CHECK(geodesic_flow(geodesic_flow(q, lambda), lambda).twists == geodesic_flow(q, lambda * lambda).twists);
    CHECK(is_isomorphic(q, q));
  }
}

TEST_CASE("numeric area invariance") {
  std::mt19937_64 rng(25);
  for (const auto& inst : support::random_instances(26, 100)) {
    NumericSurface q = to_numeric(random_surface(rng, inst));
    const double a = area(q);
    for (double t : {-1.5, 0.3, 2.0}) CHECK(std::abs(area(geodesic_flow(q, t)) - a) <= 1e-12 * a);
    CHECK(std::abs(area(horocycle_flow(q, 0.37)) - a) <= 1e-12 * a);
  }
}

TEST_CASE("twist is reduced modulo the circumference") {
  auto inst = support::random_instances(27, 1).front();
  auto q = build_surface(inst.cfg, inst.sa, inst.heights, {}, false);
  auto twisted = cylinder_twist(q, 0, Rational(q.circumference(0) / q.heights[0]));
  CHECK(twisted.twists == q.twists);
  CHECK_THROWS_AS(cylinder_twist(q, q.num_cylinders(), Rational(1)), Error);
}

TEST_CASE("period data") {
  std::mt19937_64 rng(28);
  for (const auto& inst : support::random_instances(29, 20)) {
    auto q = geodesic_flow(random_surface(rng, inst), ratio(3, 2));
    auto pd = horizontal_period_data(q);
    for (const auto& e : pd.edges) {
      CHECK(e.y == 0);
      CHECK(e.x == q.edge_length(e.piece, e.index));
    }
    CHECK(static_cast<int>(pd.crossings.size()) == q.num_cylinders());
    for (const auto& c : pd.crossings) CHECK(c.y == q.heights[c.index]);
  }
}

TEST_CASE("shortest horizontal saddle is the shortest edge") {
  std::mt19937_64 rng(30);
  for (const auto& inst : support::random_instances(31, 60)) {
    NumericSurface q = to_numeric(random_surface(rng, inst));
    double shortest = 1e300, longest = 0;
    int edges = 0;
    for (int j = 0; j < q.config.num_pieces(); ++j)
      for (int e = 0; e < q.spines.spines[j].num_edges(); ++e) {
        shortest = std::min(shortest, q.edge_length(j, e));
        longest = std::max(longest, q.edge_length(j, e));
        ++edges;
      }
    auto r = saddle_connections_up_to(q, longest, 5'000'000);
    REQUIRE(r.complete);
    double best = 1e300;
    int horizontal = 0;
    for (const auto& c : r.connections)
      if (c.crossings.empty()) best = std::min(best, c.length()), ++horizontal;
    CHECK(best == doctest::Approx(shortest).epsilon(1e-12));
    CHECK(horizontal == edges);
  }
}

TEST_CASE("saddle sets grow with the radius") {
  std::mt19937_64 rng(32);
  for (const auto& inst : support::random_instances(33, 30, 3)) {
    NumericSurface q = to_numeric(random_surface(rng, inst));
    std::set<Key> previous;
    for (double r : {0.5, 1.0, 2.0, 3.0}) {
      auto found = saddle_connections_up_to(q, r, 5'000'000);
      REQUIRE(found.complete);
      auto now = keys(found);
      CHECK(std::includes(now.begin(), now.end(), previous.begin(), previous.end()));
      for (size_t k = 1; k < found.connections.size(); ++k)
        CHECK(found.connections[k - 1].length() <= found.connections[k].length() + 1e-12);
      for (const auto& c : found.connections) {
        CHECK(c.length() <= r + 1e-9);
        CHECK((c.y > 0 || (c.y == 0 && c.x > 0)));
      }
      previous = now;
    }
  }
}

TEST_CASE("three-square surface matches the lattice count") {
  auto inst = support::three_squares();
  for (int shift = 0; shift < 2; ++shift) {
    std::vector<Rational> twists(inst.cfg.num_curves(), Rational(shift));
    auto q = to_numeric(build_surface(inst.cfg, inst.sa, inst.heights, twists, false));
    CHECK(area(q) == doctest::Approx(3.0));
    for (double r : {1.0, 1.5, 2.0, std::sqrt(5.0), 2.5, 3.0, 4.0}) {
      auto found = saddle_connections_up_to(q, r + 1e-9, 5'000'000);
      REQUIRE(found.complete);
      CHECK(static_cast<int>(found.connections.size()) == support::lattice_count(r));
      for (const auto& c : found.connections) {
        CHECK(std::abs(c.x - std::round(c.x)) < 1e-9);
        CHECK(std::abs(c.y - std::round(c.y)) < 1e-9);
      }
    }
  }
  // Frozen from the lattice count.
  CHECK(support::lattice_count(2.0) == 12);
  CHECK(support::lattice_count(std::sqrt(5.0)) == 24);
}

TEST_CASE("cap and radius errors") {
  auto inst = support::random_instances(34, 1).front();
  auto q = to_numeric(build_surface(inst.cfg, inst.sa, inst.heights, {}, false));
  CHECK_THROWS_AS(saddle_connections_up_to(q, 0.0, 100), Error);
  auto capped = saddle_connections_up_to(q, 50.0, 3);
  CHECK_FALSE(capped.complete);
}
