#include "gogbench/tree_space.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "gogbench/errors.hpp"

namespace gogbench {

BallGraph BallGraph::build(const GraphOfGroups& g, int radius, const Budget& budget) {
  g.require_valid();
  BallGraph b;
  b.graph_ = &g;
  b.radius_ = radius;
  std::map<VertexId, std::vector<GroupElement>> gens;
  for (VertexId v : g.vertex_ids()) gens[v] = g.backend(v).generators();

  auto visit = [&](NormalForm&& nf, int from_depth) -> std::uint32_t {
    if (auto it = b.index_.find(nf); it != b.index_.end()) return it->second;
    if (from_depth >= radius) return kOutside;
    if (b.forms_.size() >= budget.max_vertices) {
      throw BudgetExceeded("tree-of-spaces ball exceeds " + std::to_string(budget.max_vertices) + " vertices");
    }
    const auto id = static_cast<std::uint32_t>(b.forms_.size());
    b.gamma_.push_back(terminal_vertex(g, nf));
    b.depth_.push_back(from_depth + 1);
    b.index_.emplace(nf, id);
    b.forms_.push_back(std::move(nf));
    return id;
  };

  NormalForm origin = identity_form(g);
  b.gamma_.push_back(origin.start);
  b.depth_.push_back(0);
  b.index_.emplace(origin, 0);
  b.forms_.push_back(std::move(origin));

  b.gen_offsets_.push_back(0);
  b.cross_offsets_.push_back(0);
  for (std::size_t i = 0; i < b.forms_.size(); ++i) {
    const VertexId v = b.gamma_[i];
    const int d = b.depth_[i];
    for (const GroupElement& s : gens[v]) {
      NormalForm nf = b.forms_[i];
      append_element(g, nf, s);
      b.gen_steps_.push_back(visit(std::move(nf), d));
    }
    for (EdgeId e : g.link(v)) {
      NormalForm nf = b.forms_[i];
      append_edge(g, nf, e);
      b.crossings_.push_back({e, visit(std::move(nf), d)});
    }
    b.gen_offsets_.push_back(static_cast<std::uint32_t>(b.gen_steps_.size()));
    b.cross_offsets_.push_back(static_cast<std::uint32_t>(b.crossings_.size()));
  }

  const std::size_t n = b.forms_.size();
  b.offsets_.assign(n + 1, 0);
  std::vector<std::uint32_t> frontier;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t count = 0;
    bool touches_outside = false;
    for (std::uint32_t t : b.generator_steps(i)) {
      if (t == kOutside) {
        touches_outside = true;
      } else {
        b.adjacency_.push_back(t);
        ++count;
      }
    }
    for (const Crossing& c : b.crossings(i)) {
      if (c.target == kOutside) {
        touches_outside = true;
      } else {
        b.adjacency_.push_back(c.target);
        ++count;
      }
    }
    b.offsets_[i + 1] = b.offsets_[i] + count;
    if (touches_outside) frontier.push_back(static_cast<std::uint32_t>(i));
  }
  if (frontier.empty()) {
    b.frontier_distance_.assign(n, std::numeric_limits<int>::max());
  } else {
    b.frontier_distance_ = b.distances_from(frontier);
  }
  return b;
}

std::optional<std::size_t> BallGraph::find(const NormalForm& nf) const {
  auto it = index_.find(nf);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t BallGraph::index_of(const SpaceVertex& x) const {
  auto i = find(x.element);
  if (!i || gamma_[*i] != x.gamma) throw NotInBall("point is not in the ball of radius " + std::to_string(radius_));
  return *i;
}

std::vector<int> BallGraph::distances_from(std::size_t source) const {
  const std::uint32_t s = static_cast<std::uint32_t>(source);
  return distances_from(std::span<const std::uint32_t>(&s, 1));
}

std::vector<int> BallGraph::distances_from(std::span<const std::uint32_t> sources) const {
  std::vector<int> dist(size(), -1);
  std::vector<std::uint32_t> queue;
  queue.reserve(size());
  for (std::uint32_t s : sources) {
    if (dist[s] != 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint32_t u = queue[head];
    for (std::uint32_t w : neighbors(u)) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

int BallGraph::distance(std::size_t a, std::size_t b) const {
  if (a >= size() || b >= size()) throw NotInBall("index outside the ball");
  return distances_from(a)[b];
}

bool BallGraph::certified(std::size_t a, std::size_t b, int d) const {
  if (d + std::max(depth_[a], depth_[b]) <= radius_) return true;
  return frontier_distance_[a] >= d || frontier_distance_[b] >= d;
}

TreeNode node_of(const GraphOfGroups& g, const NormalForm& x) {
  TreeNode t{x};
  t.rep.elements.back() = g.backend(terminal_vertex(g, x)).identity();
  return t;
}

TreeNode base_node(const GraphOfGroups& g, VertexId v) {
  if (!g.has_vertex(v)) throw UnknownTreeLocation("unknown vertex " + std::to_string(v));
  std::map<VertexId, EdgeId> via;
  std::deque<VertexId> queue{g.base_vertex()};
  via[g.base_vertex()] = -1;
  while (!queue.empty()) {
    const VertexId u = queue.front();
    queue.pop_front();
    for (EdgeId e : g.link(u)) {
      const VertexId w = g.edge(e).target;
      if (g.in_spanning_tree(e) && !via.count(w)) {
        via[w] = e;
        queue.push_back(w);
      }
    }
  }
  std::vector<EdgeId> path;
  for (VertexId u = v; u != g.base_vertex(); u = g.edge(via.at(u)).source) path.push_back(via.at(u));
  NormalForm nf = identity_form(g);
  for (auto it = path.rbegin(); it != path.rend(); ++it) append_edge(g, nf, *it);
  return {nf};
}

TreeEdgeId base_edge(const GraphOfGroups& g, EdgeId e) {
  if (!g.has_edge(e)) throw UnknownTreeLocation("unknown edge " + std::to_string(e));
  return edge_location(g, base_node(g, g.edge(e).source).rep, e);
}

TreeEdgeId edge_location(const GraphOfGroups& g, const NormalForm& x, EdgeId e) {
  if (!g.has_edge(e) || g.edge(e).source != terminal_vertex(g, x)) {
    throw UnknownTreeLocation("edge " + std::to_string(e) + " does not leave the point's vertex space");
  }
  TreeEdgeId t{x, e};
  t.rep.elements.back() = g.coset_rep(x.elements.back(), e);
  return t;
}

TreeEdgeId reverse_location(const GraphOfGroups& g, const TreeEdgeId& e) {
  NormalForm across = e.rep;
  append_edge(g, across, e.edge);
  return edge_location(g, across, g.edge(e.edge).reverse);
}

TreeNode tree_source(const GraphOfGroups& g, const TreeEdgeId& e) { return node_of(g, e.rep); }

TreeNode tree_target(const GraphOfGroups& g, const TreeEdgeId& e) {
  NormalForm across = e.rep;
  append_edge(g, across, e.edge);
  return node_of(g, across);
}

namespace {

bool same_prefix(const NormalForm& a, const NormalForm& b) {
  if (a.start != b.start || a.edges != b.edges) return false;
  for (std::size_t i = 0; i + 1 < a.elements.size(); ++i) {
    if (!(a.elements[i] == b.elements[i])) return false;
  }
  return true;
}

SubspaceSelection select(const BallGraph& ball, std::variant<TreeNode, TreeEdgeId> where,
                         const NormalForm& key, std::optional<EdgeId> edge) {
  const GraphOfGroups& g = ball.graph();
  SubspaceSelection s{std::move(where), {}, std::vector<bool>(ball.size(), false)};
  for (std::size_t i = 0; i < ball.size(); ++i) {
    const NormalForm& f = ball.form(i);
    if (!same_prefix(f, key)) continue;
    if (edge && !(g.coset_rep(f.elements.back(), *edge) == key.elements.back())) continue;
    s.members.push_back(static_cast<std::uint32_t>(i));
    s.mask[i] = true;
  }
  return s;
}

}  // namespace

SubspaceSelection subspace(const BallGraph& ball, const TreeNode& t) {
  const GraphOfGroups& g = ball.graph();
  if (t.rep.elements.size() != t.rep.edges.size() + 1) throw UnknownTreeLocation("malformed tree node");
  const VertexId v = terminal_vertex(g, t.rep);
  if (!(t.rep.elements.back() == g.backend(v).identity())) {
    throw UnknownTreeLocation("tree node representative must end in the identity");
  }
  return select(ball, t, t.rep, std::nullopt);
}

SubspaceSelection subspace(const BallGraph& ball, const TreeEdgeId& t) {
  const GraphOfGroups& g = ball.graph();
  if (t.rep.elements.size() != t.rep.edges.size() + 1 || !g.has_edge(t.edge)) {
    throw UnknownTreeLocation("malformed tree edge");
  }
  if (g.edge(t.edge).source != terminal_vertex(g, t.rep) ||
      !(g.coset_rep(t.rep.elements.back(), t.edge) == t.rep.elements.back())) {
    throw UnknownTreeLocation("tree edge representative is not canonical");
  }
  return select(ball, t, t.rep, t.edge);
}

int hausdorff_distance(const BallGraph& ball, const SubspaceSelection& a, const SubspaceSelection& b) {
  if (a.empty() || b.empty()) throw EmptySelection("Hausdorff distance of an empty selection");
  const auto to_b = ball.distances_from(b.members);
  const auto to_a = ball.distances_from(a.members);
  int h = 0;
  for (std::uint32_t i : a.members) h = std::max(h, to_b[i]);
  for (std::uint32_t i : b.members) h = std::max(h, to_a[i]);
  return h;
}

namespace {

struct TreeEdgeHash {
  std::size_t operator()(const TreeEdgeId& t) const noexcept {
    return NormalFormHash{}(t.rep) * 31 + static_cast<std::size_t>(t.edge);
  }
};

struct TreeNodeHash {
  std::size_t operator()(const TreeNode& t) const noexcept { return NormalFormHash{}(t.rep); }
};

}  // namespace

std::optional<std::size_t> TreeBall::find_node(const TreeNode& t) const {
  auto it = std::find(nodes.begin(), nodes.end(), t);
  if (it == nodes.end()) return std::nullopt;
  return static_cast<std::size_t>(it - nodes.begin());
}

std::optional<std::size_t> TreeBall::find_edge(const TreeEdgeId& t) const {
  auto it = std::find(edges.begin(), edges.end(), t);
  if (it == edges.end()) return std::nullopt;
  return static_cast<std::size_t>(it - edges.begin());
}

TreeBall tree_ball(const BallGraph& ball) {
  const GraphOfGroups& g = ball.graph();
  TreeBall t;
  std::unordered_map<TreeNode, std::size_t, TreeNodeHash> node_ids;
  std::unordered_map<TreeEdgeId, std::size_t, TreeEdgeHash> edge_ids;
  std::vector<std::size_t> node_of_point(ball.size());
  for (std::size_t i = 0; i < ball.size(); ++i) {
    TreeNode n = node_of(g, ball.form(i));
    auto [it, inserted] = node_ids.emplace(n, t.nodes.size());
    if (inserted) t.nodes.push_back(std::move(n));
    node_of_point[i] = it->second;
  }
  t.outgoing.resize(t.nodes.size());
  for (std::size_t i = 0; i < ball.size(); ++i) {
    for (const auto& c : ball.crossings(i)) {
      if (c.target == kOutside) continue;
      TreeEdgeId e = edge_location(g, ball.form(i), c.edge);
      auto [it, inserted] = edge_ids.emplace(e, t.edges.size());
      if (!inserted) continue;
      t.edges.push_back(std::move(e));
      t.ends.emplace_back(node_of_point[i], node_of_point[c.target]);
      t.outgoing[node_of_point[i]].push_back(it->second);
    }
  }
  t.reverse.resize(t.edges.size());
  for (std::size_t k = 0; k < t.edges.size(); ++k) {
    t.reverse[k] = edge_ids.at(reverse_location(g, t.edges[k]));
  }
  return t;
}

TreeBall tree_ball(const GraphOfGroups& g, int radius, const Budget& budget) {
  return tree_ball(BallGraph::build(g, radius, budget));
}

namespace {

// Subdivide every unoriented edge into thirds; mu_e is the point one third
// along e from its source.
struct Subdivision {
  std::vector<std::vector<std::size_t>> adj;
  std::vector<std::size_t> mu_edge;
};

Subdivision subdivide(const TreeBall& t) {
  Subdivision s;
  const std::size_t n = t.nodes.size();
  s.adj.resize(n);
  s.mu_edge.resize(t.edges.size());
  for (std::size_t k = 0; k < t.edges.size(); ++k) {
    if (t.reverse[k] < k) continue;
    const std::size_t near = s.adj.size();
    const std::size_t far = near + 1;
    s.adj.resize(far + 1);
    auto link = [&](std::size_t a, std::size_t b) {
      s.adj[a].push_back(b);
      s.adj[b].push_back(a);
    };
    link(t.ends[k].first, near);
    link(near, far);
    link(far, t.ends[k].second);
    s.mu_edge[k] = near;
    s.mu_edge[t.reverse[k]] = far;
  }
  return s;
}

std::vector<int> bfs(const std::vector<std::vector<std::size_t>>& adj, std::size_t src) {
  std::vector<int> d(adj.size(), -1);
  std::deque<std::size_t> q{src};
  d[src] = 0;
  while (!q.empty()) {
    const std::size_t u = q.front();
    q.pop_front();
    for (std::size_t w : adj[u]) {
      if (d[w] < 0) {
        d[w] = d[u] + 1;
        q.push_back(w);
      }
    }
  }
  return d;
}

}  // namespace

bool between(const TreeBall& t, TreeRef a, TreeRef b, TreeRef c, bool strict) {
  auto same = [](TreeRef x, TreeRef y) { return x.is_edge == y.is_edge && x.index == y.index; };
  if (!strict && (same(a, b) || same(b, c))) return true;
  const Subdivision s = subdivide(t);
  auto mu = [&](TreeRef r) { return r.is_edge ? s.mu_edge.at(r.index) : r.index; };
  const std::size_t ma = mu(a);
  const std::size_t mb = mu(b);
  const std::size_t mc = mu(c);
  if (mb == ma || mb == mc) return false;
  const auto from_b = bfs(s.adj, mb);
  const auto from_a = bfs(s.adj, ma);
  return from_a[mb] + from_b[mc] == from_a[mc];
}

SidesDecomposition sides_decomposition(const BallGraph& ball, const TreeEdgeId& e) {
  const GraphOfGroups& g = ball.graph();
  const SubspaceSelection here = subspace(ball, e);
  if (here.empty()) throw EmptyEdgeSpace("edge space does not meet the ball");
  const SubspaceSelection there = subspace(ball, reverse_location(g, e));
  SidesDecomposition out;
  out.side.assign(ball.size(), -1);
  std::vector<std::uint32_t> queue;
  for (std::uint32_t i : here.members) out.side[i] = 0;
  for (std::uint32_t i : there.members) {
    if (out.side[i] == -1) {
      out.side[i] = 1;
      queue.push_back(i);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (std::uint32_t w : ball.neighbors(queue[head])) {
      if (out.side[w] == -1) {
        out.side[w] = 1;
        queue.push_back(w);
      }
    }
  }
  std::unordered_map<TreeNode, int, TreeNodeHash> sign_of_space;
  for (std::size_t i = 0; i < ball.size(); ++i) {
    const int s = out.side[i];
    if (s == 0) {
      ++out.on_edge;
      continue;
    }
    (s > 0 ? out.plus : out.minus) += 1;
    auto [it, inserted] = sign_of_space.emplace(node_of(g, ball.form(i)), s);
    if (!inserted && it->second != s) out.constant_on_vertex_spaces = false;
  }
  return out;
}

}  // namespace gogbench
