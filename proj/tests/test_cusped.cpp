#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <map>
#include <random>

#include "gogbench/cusped.hpp"
#include "gogbench/errors.hpp"

using namespace gogbench;

namespace {

// Four-point delta from a full distance matrix, written out directly.
std::int64_t twice_delta(const std::vector<std::vector<int>>& d, const std::vector<std::size_t>& pts) {
  std::int64_t best = 0;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b)
      for (std::size_t c = b + 1; c < pts.size(); ++c)
        for (std::size_t e = c + 1; e < pts.size(); ++e) {
          const auto x = pts[a], y = pts[b], z = pts[c], w = pts[e];
          std::int64_t s[3] = {d[x][y] + d[z][w], d[x][z] + d[y][w], d[x][w] + d[y][z]};
          std::sort(s, s + 3);
          best = std::max(best, s[2] - s[1]);
        }
  return best;
}

std::vector<std::vector<int>> all_distances(const FiniteGraph& g) {
  std::vector<std::vector<int>> d;
  for (std::size_t i = 0; i < g.size(); ++i) d.push_back(g.distances_from(i));
  return d;
}

std::vector<std::size_t> iota(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

FiniteGraph binary_tree(int levels) {
  FiniteGraph g(1);
  std::vector<std::size_t> layer{0};
  for (int l = 0; l < levels; ++l) {
    std::vector<std::size_t> next;
    for (auto p : layer) {
      for (int k = 0; k < 2; ++k) {
        const auto c = g.add_vertex();
        g.add_edge(p, c);
        next.push_back(c);
      }
    }
    layer = next;
  }
  return g;
}

FiniteGraph grid(std::size_t w, std::size_t h) {
  FiniteGraph g(w * h);
  for (std::size_t y = 0; y < h; ++y)
    for (std::size_t x = 0; x < w; ++x) {
      if (x + 1 < w) g.add_edge(y * w + x, y * w + x + 1);
      if (y + 1 < h) g.add_edge(y * w + x, (y + 1) * w + x);
    }
  return g;
}

FiniteGraph random_connected(std::size_t n, std::size_t extra, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  FiniteGraph g(n);
  for (std::size_t i = 1; i < n; ++i) g.add_edge(i, std::uniform_int_distribution<std::size_t>(0, i - 1)(rng));
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t k = 0; k < extra; ++k) g.add_edge(pick(rng), pick(rng));
  return g;
}

// Truncated horoball over the path 0..m-1, by the definition: (t,n) joins
// (t,n+1) and (s,n) for 0 < |s - t| <= 2^n.
int horoball_path_distance(int m, int depth, std::pair<int, int> from, std::pair<int, int> to) {
  std::map<std::pair<int, int>, int> d{{from, 0}};
  std::vector<std::pair<int, int>> q{from};
  for (std::size_t i = 0; i < q.size(); ++i) {
    const auto [t, n] = q[i];
    std::vector<std::pair<int, int>> nb;
    if (n > 0) nb.push_back({t, n - 1});
    if (n < depth) nb.push_back({t, n + 1});
    const int reach = n == 0 ? 1 : (1 << n);
    for (int s = std::max(0, t - reach); s <= std::min(m - 1, t + reach); ++s) {
      if (s != t) nb.push_back({s, n});
    }
    for (const auto& p : nb) {
      if (d.emplace(p, d[q[i]] + 1).second) q.push_back(p);
    }
  }
  return d.at(to);
}

}  // namespace

TEST_CASE("horoball examples") {
  SUBCASE("single vertex") {
    const HoroballGraph h = build_horoball(FiniteGraph(1), 2);
    CHECK(h.graph.size() == 3);
    CHECK(h.graph.edge_count() == 2);
    CHECK(h.graph.distances_from(h.at(0, 0))[h.at(0, 2)] == 2);
  }
  SUBCASE("depth zero is the base") {
    const FiniteGraph t = path_graph(9);
    const HoroballGraph h = build_horoball(t, 0);
    CHECK(h.graph.size() == 9);
    CHECK(h.graph.edge_count() == 8);
    for (std::size_t i = 0; i + 1 < 9; ++i) CHECK(h.graph.has_edge(i, i + 1));
  }
  SUBCASE("path of nine vertices at depth five") {
    const HoroballGraph h = build_horoball(path_graph(9), 5);
    const int oracle = horoball_path_distance(9, 5, {0, 0}, {8, 0});
    CHECK(oracle == 6);
    CHECK(h.graph.distances_from(h.at(0, 0))[h.at(8, 0)] == oracle);
  }
  CHECK_THROWS_AS(build_horoball(FiniteGraph(2), 1), DisconnectedBase);
}

TEST_CASE("horizontal edge rule is exact") {
  FiniteGraph t = binary_tree(3);
  const auto dt = all_distances(t);
  const int depth = 4;
  const HoroballGraph h = build_horoball(t, depth);
  for (int n = 0; n <= depth; ++n) {
    for (std::size_t a = 0; a < t.size(); ++a) {
      for (std::size_t b = 0; b < t.size(); ++b) {
        if (a == b) continue;
        const bool expect = n == 0 ? dt[a][b] == 1 : dt[a][b] <= (1 << n);
        CHECK(h.graph.has_edge(h.at(a, n), h.at(b, n)) == expect);
      }
      if (n < depth) CHECK(h.graph.has_edge(h.at(a, n), h.at(a, n + 1)));
      for (int m = n + 2; m <= depth; ++m) CHECK_FALSE(h.graph.has_edge(h.at(a, n), h.at(a, m)));
    }
  }
}

TEST_CASE("horoball distances shrink with depth") {
  const FiniteGraph t = path_graph(21);
  std::vector<int> prev;
  for (int depth = 0; depth <= 6; ++depth) {
    const HoroballGraph h = build_horoball(t, depth);
    const auto d = h.graph.distances_from(h.at(0, 0));
    std::vector<int> cur;
    for (std::size_t s = 0; s < t.size(); ++s) cur.push_back(d[h.at(s, 0)]);
    if (!prev.empty()) {
      for (std::size_t s = 0; s < cur.size(); ++s) CHECK(cur[s] <= prev[s]);
    }
    prev = cur;
  }
  CHECK(prev[20] < 20);
}

TEST_CASE("trees are 0-hyperbolic") {
  for (const FiniteGraph& t : {path_graph(12), binary_tree(4), build_horoball(FiniteGraph(1), 6).graph}) {
    CHECK(estimate_delta(t, DeltaMethod::FourPoint).delta.twice == 0);
    CHECK(estimate_delta(t, DeltaMethod::MaxMin).delta.twice == 0);
    CHECK(estimate_delta(t, DeltaMethod::Basepoint).delta.twice == 0);
  }
}

TEST_CASE("cycles against brute force") {
  // Regression values for twice delta of C_n, n = 3..12, from the oracle.
  const std::map<std::size_t, std::int64_t> pinned{{3, 0}, {4, 2}, {5, 1}, {6, 2}, {7, 2},
                                                   {8, 4}, {9, 3}, {10, 4}, {11, 4}, {12, 6}};
  for (const auto& [n, twice] : pinned) {
    const FiniteGraph c = cycle_graph(n);
    const auto d = all_distances(c);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const int k = static_cast<int>(i > j ? i - j : j - i);
        REQUIRE(d[i][j] == std::min<int>(k, static_cast<int>(n) - k));
      }
    const std::int64_t oracle = twice_delta(d, iota(n));
    CHECK(oracle == twice);
    CHECK(estimate_delta(c, DeltaMethod::FourPoint).delta.twice == oracle);
    CHECK(estimate_delta(c, DeltaMethod::MaxMin).delta.twice == oracle);
  }
}

TEST_CASE("basepoint estimate is a lower bound") {
  for (const FiniteGraph& g : {cycle_graph(9), grid(5, 4), random_connected(40, 15, 5)}) {
    const DeltaEstimate full = estimate_delta(g, DeltaMethod::FourPoint);
    for (std::size_t w = 0; w < g.size(); w += 3) {
      DeltaOptions o;
      o.basepoint = w;
      CHECK(estimate_delta(g, DeltaMethod::Basepoint, o).delta <= full.delta);
    }
  }
}

TEST_CASE("max-min agrees with the four-point scan") {
  std::vector<FiniteGraph> graphs{grid(5, 5), cycle_graph(14)};
  for (std::uint64_t seed = 1; seed <= 4; ++seed) graphs.push_back(random_connected(30 + 10 * seed, seed * 7, seed));
  graphs.push_back(build_cusped(BackendSpec::free({"x", "y"}), BackendSpec::free({"x", "y"}).parse_element("x"), 3, 2)
                       .graph);
  for (const auto& g : graphs) {
    REQUIRE(g.size() <= 300);
    const auto four = estimate_delta(g, DeltaMethod::FourPoint);
    CHECK(estimate_delta(g, DeltaMethod::MaxMin).delta == four.delta);
    if (g.size() <= 60) CHECK(four.delta.twice == twice_delta(all_distances(g), iota(g.size())));
  }
}

TEST_CASE("guard mask restricts certification") {
  const BackendSpec f2 = BackendSpec::free({"x", "y"});
  const CuspedGraph c = build_cusped(f2, f2.parse_element("x"), 3, 2);
  DeltaOptions o;
  o.excluded = &c.guarded;
  const auto guarded = estimate_delta(c.graph, DeltaMethod::FourPoint, o);
  const auto mm = estimate_delta(c.graph, DeltaMethod::MaxMin, o);
  CHECK(guarded.guarded);
  CHECK(guarded.delta == mm.delta);
  const std::size_t kept = static_cast<std::size_t>(std::count(c.guarded.begin(), c.guarded.end(), false));
  CHECK(guarded.certified_vertices == kept);
  std::vector<std::size_t> pts;
  for (std::size_t v = 0; v < c.graph.size(); ++v) {
    if (!c.guarded[v]) pts.push_back(v);
  }
  CHECK(guarded.delta.twice == twice_delta(all_distances(c.graph), pts));
  CHECK(guarded.delta <= estimate_delta(c.graph, DeltaMethod::FourPoint).delta);
}

TEST_CASE("gromov products") {
  const FiniteGraph t = binary_tree(3);
  const auto d = all_distances(t);
  for (std::size_t x = 0; x < t.size(); x += 2) {
    for (std::size_t w = 0; w < t.size(); w += 3) {
      CHECK(gromov_product(t, x, x, w).twice == 2 * d[x][w]);
      CHECK(gromov_product(t, x, w, x).twice == 0);
    }
  }
  // In a tree (x|y)_w is the distance from w to the median of x, y, w.
  for (std::size_t x = 0; x < t.size(); ++x)
    for (std::size_t y = 0; y < t.size(); y += 2)
      for (std::size_t w = 1; w < t.size(); w += 4) {
        std::size_t m = 0;
        for (std::size_t c = 0; c < t.size(); ++c) {
          if (d[x][c] + d[c][y] == d[x][y] && d[y][c] + d[c][w] == d[y][w] && d[x][c] + d[c][w] == d[x][w]) m = c;
        }
        CHECK(gromov_product(t, x, y, w).twice == 2 * d[w][m]);
      }
  CHECK(HalfInteger{3}.str() == "1.5");
  CHECK(HalfInteger{4}.str() == "2");
}

TEST_CASE("disconnected graphs are rejected") {
  const FiniteGraph g(3);
  CHECK_THROWS_AS(estimate_delta(g, DeltaMethod::FourPoint), Disconnected);
  CHECK_THROWS_AS(gromov_product(g, 0, 1, 2), Disconnected);
}

TEST_CASE("cusped graph over the free group") {
  const BackendSpec f2 = BackendSpec::free({"x", "y"});
  const GroupElement x = f2.parse_element("x");
  const int r = 2, depth = 2;
  const CuspedGraph c = build_cusped(f2, x, r, depth);

  // Oracle: reduced words of length <= r; the coset of g<x> is keyed by g
  // with trailing x-letters removed, and within a coset the points form a
  // path ordered by the x-exponent.
  std::vector<FreeWord> words{{}};
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (static_cast<int>(words[i].size()) == r) continue;
    for (FreeLetter l : {1, -1, 2, -2}) {
      if (!words[i].empty() && words[i].back() == -l) continue;
      FreeWord w = words[i];
      w.push_back(l);
      words.push_back(w);
    }
  }
  std::map<FreeWord, std::vector<int>> cosets;
  for (const auto& w : words) {
    FreeWord key = w;
    int k = 0;
    while (!key.empty() && (key.back() == 1 || key.back() == -1)) {
      k += key.back();
      key.pop_back();
    }
    cosets[key].push_back(k);
  }
  std::size_t cayley_edges = words.size() - 1;
  std::size_t horo_edges = 0;
  for (auto& [key, ks] : cosets) {
    std::sort(ks.begin(), ks.end());
    horo_edges += ks.size() * depth;  // vertical
    for (int n = 1; n <= depth; ++n)
      for (std::size_t a = 0; a < ks.size(); ++a)
        for (std::size_t b = a + 1; b < ks.size(); ++b) horo_edges += (ks[b] - ks[a] <= (1 << n));
  }
  CHECK(words.size() == 17);
  CHECK(c.cayley.size() == words.size());
  CHECK(c.coset_count == cosets.size());
  CHECK(c.graph.size() == words.size() * (depth + 1));
  CHECK(c.graph.edge_count() == cayley_edges + horo_edges);
  CHECK(c.graph.connected());

  SUBCASE("radius zero") {
    const CuspedGraph z = build_cusped(f2, x, 0, 3);
    CHECK(z.graph.size() == 4);
    CHECK(z.graph.edge_count() == 3);
    CHECK(z.coset_count == 1);
  }
  CHECK_THROWS_AS(build_cusped(f2, f2.parse_element("x y"), 2, 1), SchemaError);
  CHECK_THROWS_AS(build_cusped(f2, x, 6, 4, Budget{1000}), BudgetExceeded);
}

TEST_CASE("Z2 base") {
  const BackendSpec z2 = BackendSpec::free_abelian({"x", "y"});
  const GroupElement e1 = z2.parse_element("x");
  SUBCASE("horizontal lines partition the ball") {
    const int r = 3;
    const CuspedGraph c = build_cusped(z2, e1, r, 1);
    CHECK(c.coset_count == 2 * r + 1);
    std::map<std::int64_t, std::size_t> per_line;
    for (const auto& p : c.cayley) ++per_line[p.abelian[1]];
    std::size_t total = 0;
    for (const auto& [yv, n] : per_line) {
      CHECK(n == static_cast<std::size_t>(2 * (r - std::llabs(yv)) + 1));
      total += n;
    }
    CHECK(total == c.cayley.size());
    CHECK(c.graph.size() == 2 * c.cayley.size());
  }
  SUBCASE("the grid is not hyperbolic") {
    const auto d2 = estimate_delta(build_cusped(z2, e1, 2, 0).graph, DeltaMethod::FourPoint);
    const auto d4 = estimate_delta(build_cusped(z2, e1, 4, 0).graph, DeltaMethod::FourPoint);
    CHECK(d4.delta > d2.delta);
    const FiniteGraph g4 = build_cusped(z2, e1, 4, 0).graph;
    CHECK(d4.delta.twice == twice_delta(all_distances(g4), iota(g4.size())));
  }
}
