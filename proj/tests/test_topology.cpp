#include <doctest.h>

#include <functional>
#include <random>
#include <set>

#include "support.hpp"
#include "ttlab/errors.hpp"
#include "ttlab/topology.hpp"

using namespace ttlab;

namespace {

using Adj = std::vector<std::vector<int>>;  // loops counted once on the diagonal

bool isomorphic(const Adj& a, const Adj& b) {
  const int n = static_cast<int>(a.size());
  std::vector<int> map(n, -1), used(n, 0);
  std::function<bool(int)> extend = [&](int v) {
    if (v == n) return true;
    for (int w = 0; w < n; ++w) {
      if (used[w] || a[v][v] != b[w][w]) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u) ok = a[v][u] == b[w][map[u]];
      if (!ok) continue;
      map[v] = w;
      used[w] = 1;
      if (extend(v + 1)) return true;
      used[w] = 0;
    }
    map[v] = -1;
    return false;
  };
  return extend(0);
}

bool connected(const Adj& a) {
  const int n = static_cast<int>(a.size());
  std::vector<int> seen(n, 0), stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w = 0; w < n; ++w)
      if (a[v][w] && !seen[w]) seen[w] = 1, stack.push_back(w);
  }
  return std::count(seen.begin(), seen.end(), 1) == n;
}

std::vector<int> invariant(const Adj& a) {
  std::vector<std::vector<int>> rows;
  for (size_t v = 0; v < a.size(); ++v) {
    std::vector<int> r;
    for (size_t w = 0; w < a.size(); ++w)
      if (w != v && a[v][w]) r.push_back(a[v][w]);
    std::sort(r.begin(), r.end());
    r.insert(r.begin(), a[v][v]);
    rows.push_back(r);
  }
  std::sort(rows.begin(), rows.end());
  std::vector<int> flat;
  for (auto& r : rows) {
    flat.push_back(-1);
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return flat;
}

// Connected 3-regular multigraphs with loops on n vertices, up to isomorphism, by direct
// enumeration of adjacency matrices.
std::vector<Adj> cubic_multigraphs(int n) {
  Adj a(n, std::vector<int>(n, 0));
  std::vector<int> deg(n, 0);
  std::map<std::vector<int>, std::vector<Adj>> classes;
  std::function<void(int, int)> fill = [&](int i, int j) {
    if (i == n) {
      if (!connected(a)) return;
      auto& bucket = classes[invariant(a)];
      for (const auto& b : bucket)
        if (isomorphic(a, b)) return;
      bucket.push_back(a);
      return;
    }
    if (j == n) {
      if (deg[i] == 3) fill(i + 1, i + 1);
      return;
    }
    const int step = i == j ? 2 : 1;
    for (int m = 0; deg[i] + step * m <= 3 && (i == j || deg[j] + m <= 3); ++m) {
      a[i][j] = a[j][i] = m;
      deg[i] += step * m;
      if (i != j) deg[j] += m;
      fill(i, j + 1);
      deg[i] -= step * m;
      if (i != j) deg[j] -= m;
      a[i][j] = a[j][i] = 0;
    }
  };
  fill(0, 0);
  std::vector<Adj> out;
  for (auto& [k, bucket] : classes) out.insert(out.end(), bucket.begin(), bucket.end());
  return out;
}

Adj adjacency_of(const MulticurveConfig& cfg) {
  const int n = cfg.num_pieces();
  Adj a(n, std::vector<int>(n, 0));
  for (const auto& g : cfg.gluing) {
    int p = g.side_a.piece, q = g.side_b.piece;
    if (p == q) a[p][p] += 1;
    else a[p][q] += 1, a[q][p] += 1;
  }
  return a;
}

MulticurveConfig theta_config() {
  MulticurveConfig cfg;
  cfg.genus = 2;
  cfg.pieces = {{0, 3}, {0, 3}};
  cfg.gluing = {{{0, 0}, {1, 0}}, {{0, 1}, {1, 1}}, {{0, 2}, {1, 2}}};
  return cfg;
}

}  // namespace

TEST_CASE("pants types per genus agree with a brute-force multigraph count") {
  for (int g = 2; g <= 5; ++g) {
    auto oracle = cubic_multigraphs(2 * g - 2);
    auto configs = enumerate_pants_configs(g);
    CHECK(configs.size() == oracle.size());
    for (size_t i = 0; i < configs.size(); ++i) {
      CHECK(is_pants_decomposition(configs[i]));
      CHECK(validate_config(configs[i]).ok());
      for (size_t j = 0; j < i; ++j) CHECK_FALSE(isomorphic(adjacency_of(configs[i]), adjacency_of(configs[j])));
    }
  }
  // Frozen from the oracle above.
  CHECK(enumerate_pants_configs(2).size() == 2);
  CHECK(enumerate_pants_configs(3).size() == 5);
  CHECK(enumerate_pants_configs(4).size() == 17);
  CHECK(enumerate_pants_configs(5).size() == 71);
}

TEST_CASE("validation reports each structural defect") {
  CHECK(validate_config(theta_config()).ok());

  auto cfg = theta_config();
  cfg.genus = 1;
  CHECK(validate_config(cfg).has(Violation::GenusTooSmall));

  cfg = theta_config();
  cfg.pieces[0] = {0, 2};
  cfg.gluing[2].side_a = {1, 2};
  auto r = validate_config(cfg);
  CHECK(r.has(Violation::DiskOrAnnulus));

  cfg = theta_config();
  cfg.gluing[0].side_b = {5, 0};
  CHECK(validate_config(cfg).has(Violation::BadSlotRef));

  cfg = theta_config();
  cfg.gluing[1].side_b = {1, 0};
  r = validate_config(cfg);
  CHECK(r.has(Violation::SlotGluedTwice));
  CHECK(r.has(Violation::UnmatchedSlot));

  cfg = theta_config();
  cfg.genus = 3;
  CHECK(validate_config(cfg).has(Violation::EulerMismatch));

  // Two separate genus-2 surfaces.
  MulticurveConfig two;
  two.genus = 3;
  two.pieces = {{0, 3}, {0, 3}, {0, 3}, {0, 3}};
  two.gluing = {{{0, 0}, {1, 0}}, {{0, 1}, {1, 1}}, {{0, 2}, {1, 2}},
                {{2, 0}, {3, 0}}, {{2, 1}, {3, 1}}, {{2, 2}, {3, 2}}};
  CHECK(validate_config(two).has(Violation::Disconnected));

  CHECK_THROWS_AS(require_valid(two), Error);
}

TEST_CASE("canonical form is invariant under relabelling") {
  std::mt19937_64 rng(5);
  for (int g = 2; g <= 4; ++g)
    for (const auto& cfg : enumerate_pants_configs(g)) {
      auto key = canonical_key(cfg);
      CHECK(canonicalize(canonicalize(cfg)) == canonicalize(cfg));
      for (int trial = 0; trial < 5; ++trial) {
        support::Instance inst;
        inst.cfg = cfg;
        inst.sa = pants_assignment(cfg, std::vector<Rational>(cfg.num_curves(), Rational(1)));
        inst.heights = support::default_heights(cfg);
        auto moved = support::relabel(inst, rng);
        CHECK(canonical_key(moved.cfg) == key);
      }
    }
}

TEST_CASE("slot table lists each slot once") {
  for (const auto& cfg : enumerate_pants_configs(3)) {
    auto table = slot_table(cfg);
    std::multiset<std::pair<int, bool>> uses;
    for (const auto& piece : table)
      for (const auto& use : piece) uses.insert({use.curve, use.side_a});
    for (int i = 0; i < cfg.num_curves(); ++i) {
      CHECK(uses.count({i, true}) == 1);
      CHECK(uses.count({i, false}) == 1);
    }
  }
}
