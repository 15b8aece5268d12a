#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "double_oracle.hpp"
#include "fixtures.hpp"
#include "gogbench/errors.hpp"
#include "gogbench/tree_space.hpp"

using namespace gogbench;

namespace {

NormalForm vertex_point(const GraphOfGroups& g, const char* element) {
  NormalForm nf = identity_form(g);
  append_element(g, nf, g.backend(nf.start).parse_element(element));
  return nf;
}

// Ball distance restricted to steps that avoid `blocked`.
std::vector<int> bfs_avoiding(const BallGraph& b, const std::vector<std::uint32_t>& src,
                              const std::vector<bool>& blocked) {
  std::vector<int> d(b.size(), -1);
  std::vector<std::uint32_t> q;
  for (auto s : src) {
    if (!blocked[s] && d[s] < 0) {
      d[s] = 0;
      q.push_back(s);
    }
  }
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (auto w : b.neighbors(q[i])) {
      if (!blocked[w] && d[w] < 0) {
        d[w] = d[q[i]] + 1;
        q.push_back(w);
      }
    }
  }
  return d;
}

}  // namespace

TEST_CASE("ball sizes of the torus complex") {
  const GraphOfGroups g = fixtures::load(fixtures::kTorus3).graph();
  CHECK(BallGraph::build(g, 0).size() == 1);
  // 1 + |S_v| + one crossing from the basepoint into the adjacent vertex space.
  CHECK(BallGraph::build(g, 1).size() == 8);
  CHECK_THROWS_AS(BallGraph::build(g, 6, Budget{1000}), BudgetExceeded);
}

TEST_CASE("distances inside one vertex space") {
  const GraphOfGroups g = fixtures::load(fixtures::kTorus3).graph();
  const BallGraph b = BallGraph::build(g, 3);
  const auto ab = b.index_of({1, vertex_point(g, "a1 b2")});
  CHECK(b.distance(b.basepoint(), ab) == 2);
  CHECK(b.distance(ab, ab) == 0);
  CHECK_THROWS_AS(b.index_of({1, vertex_point(g, "a1 a1 a1 a1")}), NotInBall);
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (const auto& c : b.crossings(i)) {
      if (c.target != kOutside) CHECK(b.distance(i, c.target) == 1);
    }
  }
}

TEST_CASE("double: ball matches the F3 x Z oracle") {
  const GraphOfGroups g = fixtures::load(fixtures::kDouble).graph();
  for (int r = 0; r <= 3; ++r) {
    const BallGraph b = BallGraph::build(g, r);
    const auto oracle = double_oracle::ball(r);
    CHECK(b.size() == oracle.order.size());
    std::set<double_oracle::Point> mapped;
    for (std::size_t i = 0; i < b.size(); ++i) {
      const auto p = double_oracle::point_of(to_word(g, b.form(i)));
      CHECK(p.side == b.gamma(i));
      CHECK(oracle.depth.count(p) == 1);
      CHECK(oracle.depth.at(p) == b.depth(i));
      mapped.insert(p);
    }
    CHECK(mapped.size() == b.size());
  }
}

TEST_CASE("adjacency is symmetric and crossings are involutive") {
  const GraphOfGroups g = fixtures::load(fixtures::kMixed).graph();
  const BallGraph b = BallGraph::build(g, 4);
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (auto j : b.neighbors(i)) {
      const auto back = b.neighbors(j);
      CHECK(std::count(back.begin(), back.end(), static_cast<std::uint32_t>(i)) == 1);
    }
    for (const auto& c : b.crossings(i)) {
      if (c.target == kOutside) continue;
      const EdgeId rev = g.edge(c.edge).reverse;
      bool returned = false;
      for (const auto& d : b.crossings(c.target)) returned = returned || (d.edge == rev && d.target == i);
      CHECK(returned);
    }
  }
}

TEST_CASE("metric axioms and monotone refinement") {
  const GraphOfGroups g = fixtures::load(fixtures::kTorus3).graph();
  const BallGraph small = BallGraph::build(g, 3);
  const BallGraph big = BallGraph::build(g, 5);
  std::mt19937_64 rng(51);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t a = rng() % small.size();
    const std::size_t bb = rng() % small.size();
    const std::size_t c = rng() % small.size();
    const int ab = small.distance(a, bb);
    CHECK(ab == small.distance(bb, a));
    CHECK(small.distance(a, c) <= ab + small.distance(bb, c));
    const auto ia = *big.find(small.form(a));
    const auto ib = *big.find(small.form(bb));
    const int refined = big.distance(ia, ib);
    CHECK(refined <= ab);
    if (small.certified(a, bb, ab)) CHECK(refined == ab);
  }
}

TEST_CASE("subspace selections") {
  const GraphOfGroups g = fixtures::load(fixtures::kTorus3).graph();
  const BallGraph b1 = BallGraph::build(g, 1);
  const auto base = subspace(b1, base_node(g, 1));
  CHECK(base.size() == 7);

  const BallGraph b = BallGraph::build(g, 4);
  const TreeBall t = tree_ball(b);
  std::vector<int> owner(b.size(), -1);
  for (std::size_t n = 0; n < t.nodes.size(); ++n) {
    for (auto i : subspace(b, t.nodes[n]).members) {
      CHECK(owner[i] == -1);
      owner[i] = static_cast<int>(n);
    }
  }
  CHECK(std::none_of(owner.begin(), owner.end(), [](int o) { return o < 0; }));

  for (std::size_t k = 0; k < t.edges.size(); ++k) {
    const auto xe = subspace(b, t.edges[k]);
    const auto xbar = subspace(b, t.edges[t.reverse[k]]);
    const auto src = subspace(b, t.nodes[t.ends[k].first]);
    const auto dst = subspace(b, t.nodes[t.ends[k].second]);
    for (const auto* other : {&src, &dst, &xbar}) {
      const auto d = b.distances_from(other->members);
      // Points on the truncation sphere may have their partner outside.
      for (auto i : xe.members) {
        if (b.depth(i) < b.radius()) CHECK(d[i] <= 1);
      }
    }
    for (auto i : xe.members) CHECK(src.contains(i));
  }
  TreeNode bogus = base_node(g, 1);
  bogus.rep.elements.back() = g.backend(1).parse_element("a1");
  CHECK_THROWS_AS(subspace(b, bogus), UnknownTreeLocation);
}

TEST_CASE("Hausdorff distances") {
  const GraphOfGroups g = fixtures::load(fixtures::kTorus3).graph();
  const BallGraph b = BallGraph::build(g, 3);
  const auto xe = subspace(b, base_edge(g, 1));
  const auto xbar = subspace(b, reverse_location(g, base_edge(g, 1)));
  CHECK(hausdorff_distance(b, xe, xe) == 0);
  // On the raw truncated sets the boundary points lose their partners.
  CHECK(hausdorff_distance(b, xe, xbar) >= 1);
  // Matched truncation: keep the pairs x, alpha_e(x) that both lie in the ball.
  SubspaceSelection a{xe.where, {}, std::vector<bool>(b.size(), false)};
  SubspaceSelection c{xbar.where, {}, std::vector<bool>(b.size(), false)};
  for (auto i : xe.members) {
    for (const auto& cr : b.crossings(i)) {
      if (cr.edge != 1 || cr.target == kOutside) continue;
      a.members.push_back(i);
      a.mask[i] = true;
      c.members.push_back(cr.target);
      c.mask[cr.target] = true;
    }
  }
  CHECK(hausdorff_distance(b, a, c) == 1);
  SubspaceSelection empty{base_node(g, 1), {}, std::vector<bool>(b.size(), false)};
  CHECK_THROWS_AS(hausdorff_distance(b, xe, empty), EmptySelection);

  // Two edge spaces at the middle vertex of the five-torus complex drift apart.
  const GraphOfGroups g5 = parse_config(fixtures::torus5_path()).graph();
  int previous = -1;
  for (int r = 3; r <= 5; ++r) {
    const BallGraph br = BallGraph::build(g5, r);
    const int h = hausdorff_distance(br, subspace(br, base_edge(g5, 2)), subspace(br, base_edge(g5, 3)));
    CHECK(h > previous);
    previous = h;
  }
}

TEST_CASE("betweenness in the tree ball") {
  const GraphOfGroups g = fixtures::load(fixtures::kTorus3).graph();
  const BallGraph b = BallGraph::build(g, 4);
  const TreeBall t = tree_ball(b);
  for (std::size_t k = 0; k < t.edges.size(); ++k) {
    const TreeRef src{false, t.ends[k].first};
    const TreeRef e{true, k};
    const TreeRef ebar{true, t.reverse[k]};
    CHECK(between(t, src, e, ebar));
    CHECK_FALSE(between(t, src, src, {false, t.ends[k].second}));
    CHECK(between(t, src, src, {false, t.ends[k].second}, false));
  }
  // Vertex degrees: distinct edge-group cosets met by crossings inside the ball.
  for (std::size_t n = 0; n < t.nodes.size(); ++n) {
    std::set<std::pair<EdgeId, std::string>> cosets;
    for (auto i : subspace(b, t.nodes[n]).members) {
      for (const auto& c : b.crossings(i)) {
        if (c.target == kOutside) continue;
        cosets.insert({c.edge, g.backend(b.gamma(i)).render(g.coset_rep(b.local(i), c.edge))});
      }
    }
    CHECK(t.degree(n) == cosets.size());
  }
}

TEST_CASE("paths between separated spaces meet the middle one") {
  const GraphOfGroups g = parse_config(fixtures::torus5_path()).graph();
  const BallGraph b = BallGraph::build(g, 4);
  const TreeBall t = tree_ball(b);
  auto select = [&](TreeRef r) { return r.is_edge ? subspace(b, t.edges[r.index]) : subspace(b, t.nodes[r.index]); };
  std::vector<TreeRef> refs;
  for (std::size_t n = 0; n < t.nodes.size(); ++n) refs.push_back({false, n});
  for (std::size_t k = 0; k < t.edges.size(); ++k) refs.push_back({true, k});
  std::size_t checked = 0;
  for (const TreeRef& a : refs) {
    const auto sa = select(a);
    for (const TreeRef& mid : refs) {
      if (!between(t, a, mid, refs.front()) && mid.index % 3 != 0) continue;
      const auto sb = select(mid);
      const auto reach = bfs_avoiding(b, sa.members, sb.mask);
      for (const TreeRef& c : refs) {
        if (!between(t, a, mid, c)) continue;
        for (auto i : select(c).members) CHECK(reach[i] < 0);
        ++checked;
      }
    }
    if (checked > 2000) break;
  }
  CHECK(checked > 0);
}

TEST_CASE("sides of an edge space") {
  const GraphOfGroups g = parse_config(fixtures::torus5_path()).graph();
  const BallGraph b = BallGraph::build(g, 4);
  const TreeEdgeId e = base_edge(g, 3);
  const SidesDecomposition s = sides_decomposition(b, e);
  const auto xe = subspace(b, e);
  const auto xbar = subspace(b, reverse_location(g, e));
  const auto src = subspace(b, tree_source(g, e));
  for (auto i : xbar.members) CHECK(s.side[i] == 1);
  for (auto i : xe.members) CHECK(s.side[i] == 0);
  for (auto i : src.members) {
    if (!xe.contains(i)) CHECK(s.side[i] == -1);
  }
  CHECK(s.constant_on_vertex_spaces);
  CHECK(s.on_edge + s.plus + s.minus == b.size());
}
