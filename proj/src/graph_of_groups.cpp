#include "gogbench/graph_of_groups.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include "gogbench/errors.hpp"

namespace gogbench {

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const auto& v : violations) {
    os << v.what;
    if (!v.witness.empty()) os << " [witness: " << v.witness << "]";
    os << "\n";
  }
  return os.str();
}

std::optional<EdgeSubgroup> split_edge_shape(const BackendSpec& b, const std::array<GroupElement, 2>& pair,
                                             Violation* why) {
  auto fail = [&](std::string what, std::string witness) -> std::optional<EdgeSubgroup> {
    if (why != nullptr) *why = {std::move(what), std::move(witness)};
    return std::nullopt;
  };
  if (b.kind() != BackendKind::Product) {
    return fail("edge subgroup requires a Product vertex backend", "");
  }
  for (const auto& g : pair) {
    if (!b.owns(g)) return fail("edge basis element outside the vertex group", "");
  }
  const FreeWord& p1 = pair[0].free;
  const FreeWord& p2 = pair[1].free;
  const FreeWord& seed = p1.empty() ? p2 : p1;
  if (seed.empty()) {
    return fail("edge basis has rank < 2 (both free parts trivial)", b.render(pair[0]) + ", " + b.render(pair[1]));
  }
  FreeWord root = primitive_root(seed).root;
  FreeWord root_inv = free_inverse(root);
  if (shortlex_less(root_inv, root)) root = root_inv;
  const auto a1 = cyclic_membership(p1, root);
  const auto a2 = cyclic_membership(p2, root);
  if (!a1 || !a2) {
    const GroupElement comm =
        b.multiply(b.multiply(pair[0], pair[1]), b.multiply(b.invert(pair[0]), b.invert(pair[1])));
    return fail("edge basis elements do not commute", "[b1,b2] = " + b.render(comm));
  }
  EdgeSubgroup s;
  s.root = root;
  s.basis_coords.col0 = {*a1, pair[0].abelian[0]};
  s.basis_coords.col1 = {*a2, pair[1].abelian[0]};
  const std::int64_t det = s.basis_coords.det();
  if (det == 0) {
    return fail("edge basis has rank < 2", b.render(pair[0]) + ", " + b.render(pair[1]));
  }
  const std::int64_t c = std::gcd(pair[0].abelian[0], pair[1].abelian[0]);
  if (c == 0 || std::llabs(det) != c) {
    return fail("edge subgroup is not of the split shape <(u,0)> x <(1,c)>",
                b.render(pair[0]) + ", " + b.render(pair[1]));
  }
  s.center_step = c;
  return s;
}

GraphOfGroups::GraphOfGroups(std::vector<VertexGroup> vertices, std::vector<OrientedEdge> edges,
                             std::optional<std::vector<EdgeId>> tree_override) {
  for (auto& v : vertices) {
    const VertexId id = v.id;
    if (!vertices_.emplace(id, std::move(v)).second) {
      structural_.push_back({"duplicate vertex id " + std::to_string(id), ""});
    }
  }
  for (auto& e : edges) {
    const EdgeId id = e.id;
    if (!edges_.emplace(id, std::move(e)).second) {
      structural_.push_back({"duplicate edge id " + std::to_string(id), ""});
    }
  }
  for (const auto& [id, v] : vertices_) links_[id];
  for (const auto& [id, e] : edges_) {
    if (vertices_.count(e.source) != 0) links_[e.source].push_back(id);
  }
  for (const auto& [id, e] : edges_) analysis_.emplace(id, analyze(e));
  build_spanning_tree(tree_override);
}

GraphOfGroups::EdgeAnalysis GraphOfGroups::analyze(const OrientedEdge& e) const {
  EdgeAnalysis a;
  const std::string tag = "edge " + std::to_string(e.id) + ": ";
  if (vertices_.count(e.source) == 0 || vertices_.count(e.target) == 0) {
    a.problems.push_back({tag + "endpoint vertex not declared", ""});
    return a;
  }
  Violation why;
  a.source_shape = split_edge_shape(vertices_.at(e.source).backend, e.basis, &why);
  if (!a.source_shape) a.problems.push_back({tag + why.what + " (source end)", why.witness});
  a.target_shape = split_edge_shape(vertices_.at(e.target).backend, e.image, &why);
  if (!a.target_shape) a.problems.push_back({tag + why.what + " (target end)", why.witness});
  return a;
}

void GraphOfGroups::build_spanning_tree(const std::optional<std::vector<EdgeId>>& tree_override) {
  for (const auto& [id, e] : edges_) tree_edges_[id] = false;
  if (vertices_.empty()) return;
  if (tree_override) {
    for (EdgeId id : *tree_override) {
      if (edges_.count(id) == 0) {
        structural_.push_back({"spanning tree override names unknown edge " + std::to_string(id), ""});
        continue;
      }
      tree_edges_[id] = true;
      const EdgeId r = edges_.at(id).reverse;
      if (edges_.count(r) != 0) tree_edges_[r] = true;
    }
    // Must touch every vertex exactly as a tree: |V|-1 unoriented edges, connected.
    std::set<VertexId> seen{base_vertex()};
    std::deque<VertexId> queue{base_vertex()};
    std::size_t unoriented = 0;
    for (const auto& [id, on] : tree_edges_) {
      if (on && edges_.count(edges_.at(id).reverse) != 0 && id < edges_.at(id).reverse) ++unoriented;
    }
    while (!queue.empty()) {
      const VertexId v = queue.front();
      queue.pop_front();
      for (EdgeId id : links_[v]) {
        if (!tree_edges_[id]) continue;
        if (seen.insert(edges_.at(id).target).second) queue.push_back(edges_.at(id).target);
      }
    }
    if (seen.size() != vertices_.size() || unoriented + 1 != vertices_.size()) {
      structural_.push_back({"spanning tree override is not a spanning tree", ""});
    }
    return;
  }
  std::set<VertexId> seen{base_vertex()};
  std::deque<VertexId> queue{base_vertex()};
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (EdgeId id : links_[v]) {
      const OrientedEdge& e = edges_.at(id);
      if (vertices_.count(e.target) == 0 || seen.count(e.target) != 0) continue;
      seen.insert(e.target);
      queue.push_back(e.target);
      tree_edges_[id] = true;
      if (edges_.count(e.reverse) != 0) tree_edges_[e.reverse] = true;
    }
  }
}

const VertexGroup& GraphOfGroups::vertex(VertexId v) const {
  auto it = vertices_.find(v);
  if (it == vertices_.end()) throw ValidationFailed("unknown vertex " + std::to_string(v));
  return it->second;
}

const OrientedEdge& GraphOfGroups::edge(EdgeId e) const {
  auto it = edges_.find(e);
  if (it == edges_.end()) throw ValidationFailed("unknown edge " + std::to_string(e));
  return it->second;
}

std::vector<VertexId> GraphOfGroups::vertex_ids() const {
  std::vector<VertexId> out;
  for (const auto& [id, v] : vertices_) out.push_back(id);
  return out;
}

std::vector<EdgeId> GraphOfGroups::edge_ids() const {
  std::vector<EdgeId> out;
  for (const auto& [id, e] : edges_) out.push_back(id);
  return out;
}

VertexId GraphOfGroups::base_vertex() const {
  if (vertices_.empty()) throw ValidationFailed("graph of groups has no vertices");
  return vertices_.begin()->first;
}

const std::vector<EdgeId>& GraphOfGroups::link(VertexId v) const {
  auto it = links_.find(v);
  if (it == links_.end()) throw ValidationFailed("unknown vertex " + std::to_string(v));
  return it->second;
}

bool GraphOfGroups::in_spanning_tree(EdgeId e) const {
  auto it = tree_edges_.find(e);
  return it != tree_edges_.end() && it->second;
}

const EdgeSubgroup& GraphOfGroups::edge_subgroup(EdgeId e) const {
  auto it = analysis_.find(e);
  if (it == analysis_.end()) throw ValidationFailed("unknown edge " + std::to_string(e));
  if (!it->second.source_shape) {
    throw ValidationFailed("edge " + std::to_string(e) + " has no valid edge subgroup");
  }
  return *it->second.source_shape;
}

const EdgeSubgroup& GraphOfGroups::target_subgroup(EdgeId e) const {
  auto it = analysis_.find(e);
  if (it == analysis_.end()) throw ValidationFailed("unknown edge " + std::to_string(e));
  if (!it->second.target_shape) {
    throw ValidationFailed("edge " + std::to_string(e) + " has no valid edge-map image");
  }
  return *it->second.target_shape;
}

std::optional<EdgeCoordinates> GraphOfGroups::edge_membership(const GroupElement& x, EdgeId e) const {
  const OrientedEdge& oe = edge(e);
  const BackendSpec& b = backend(oe.source);
  if (!b.owns(x)) throw BackendMismatch("element is not in the source group of edge " + std::to_string(e));
  const EdgeSubgroup& s = edge_subgroup(e);
  const auto a = cyclic_membership(x.free, s.root);
  if (!a) return std::nullopt;
  const auto k = solve_integer(s.basis_coords, {*a, x.abelian[0]});
  if (!k) return std::nullopt;
  return EdgeCoordinates{(*k)[0], (*k)[1]};
}

GroupElement GraphOfGroups::edge_element(EdgeId e, EdgeCoordinates k) const {
  const OrientedEdge& oe = edge(e);
  const EdgeSubgroup& s = edge_subgroup(e);
  const IntVec2 v = s.basis_coords.apply({k.k1, k.k2});
  return backend(oe.source).make_product(free_power(s.root, v[0]), v[1]);
}

GroupElement GraphOfGroups::tau(EdgeId e, const GroupElement& x) const {
  const auto k = edge_membership(x, e);
  if (!k) throw ValidationFailed("tau applied outside the edge group of edge " + std::to_string(e));
  const OrientedEdge& oe = edge(e);
  const EdgeSubgroup& t = target_subgroup(e);
  const IntVec2 v = t.basis_coords.apply({k->k1, k->k2});
  return backend(oe.target).make_product(free_power(t.root, v[0]), v[1]);
}

EdgeCoordinates GraphOfGroups::tau_coordinates(EdgeId e, EdgeCoordinates k) const {
  const OrientedEdge& oe = edge(e);
  const EdgeSubgroup& t = target_subgroup(e);
  const IntVec2 v = t.basis_coords.apply({k.k1, k.k2});
  const GroupElement img = backend(oe.target).make_product(free_power(t.root, v[0]), v[1]);
  const auto back = edge_membership(img, oe.reverse);
  if (!back) throw ValidationFailed("image of tau_e is not inside G_ebar for edge " + std::to_string(e));
  return *back;
}

GroupElement GraphOfGroups::coset_rep(const GroupElement& x, EdgeId e) const {
  const OrientedEdge& oe = edge(e);
  const BackendSpec& b = backend(oe.source);
  if (!b.owns(x)) throw BackendMismatch("element is not in the source group of edge " + std::to_string(e));
  const EdgeSubgroup& s = edge_subgroup(e);
  const std::int64_t c = s.center_step;
  std::int64_t m = ((x.abelian[0] % c) + c) % c;
  if (2 * m > c) m -= c;  // ties keep the positive letter, which ranks first
  return b.make_product(free_coset_rep(x.free, s.root), m);
}

std::pair<GroupElement, GroupElement> GraphOfGroups::split_coset(const GroupElement& x, EdgeId e) const {
  const BackendSpec& b = backend(edge(e).source);
  GroupElement rep = coset_rep(x, e);
  GroupElement rest = b.multiply(b.invert(rep), x);
  return {std::move(rep), std::move(rest)};
}

ConjugateEdgeSubgroup GraphOfGroups::conjugate_edge_subgroup(const GroupElement& g, EdgeId e) const {
  const BackendSpec& b = backend(edge(e).source);
  if (!b.owns(g)) throw BackendMismatch("conjugator is not in the source group of edge " + std::to_string(e));
  const EdgeSubgroup& s = edge_subgroup(e);
  return {free_multiply(free_multiply(g.free, s.root), free_inverse(g.free)), s.center_step};
}

ValidationReport GraphOfGroups::validate() const {
  ValidationReport r;
  r.violations = structural_;
  if (vertices_.empty()) r.violations.push_back({"graph has no vertices", ""});
  if (edges_.empty()) r.violations.push_back({"underlying graph has no edge", ""});
  for (const auto& [id, v] : vertices_) {
    if (v.backend.kind() != BackendKind::Product) {
      r.violations.push_back({"vertex " + std::to_string(id) + ": backend is not F x Z", ""});
    }
  }
  for (const auto& [id, e] : edges_) {
    const std::string tag = "edge " + std::to_string(id) + ": ";
    const auto& a = analysis_.at(id);
    for (const auto& p : a.problems) r.violations.push_back(p);
    auto rit = edges_.find(e.reverse);
    if (rit == edges_.end()) {
      r.violations.push_back({tag + "reverse edge " + std::to_string(e.reverse) + " not declared", ""});
      continue;
    }
    const OrientedEdge& re = rit->second;
    if (e.reverse == id) {
      r.violations.push_back({tag + "reverse is a fixed point of the involution", ""});
      continue;
    }
    if (re.reverse != id) r.violations.push_back({tag + "reverse of reverse is not this edge", ""});
    if (re.source != e.target || re.target != e.source) {
      r.violations.push_back({tag + "reverse edge endpoints are not swapped", ""});
    }
    if (re.forward == e.forward) {
      r.violations.push_back({tag + "exactly one of an edge and its reverse must be forward", ""});
    }
    if (!a.source_shape || !a.target_shape || !analysis_.at(e.reverse).source_shape) continue;
    // tau_ebar o tau_e must be the identity on the declared basis.
    for (std::size_t i = 0; i < 2; ++i) {
      const auto k = edge_membership(e.image[i], e.reverse);
      if (!k) {
        r.violations.push_back({tag + "tau_e(basis) leaves G_ebar", backend(e.target).render(e.image[i])});
        break;
      }
      const GroupElement back = tau(e.reverse, e.image[i]);
      if (!(back == e.basis[i])) {
        r.violations.push_back({tag + "tau_ebar o tau_e is not the identity",
                                backend(e.source).render(e.basis[i]) + " -> " + backend(e.source).render(back)});
        break;
      }
    }
  }
  // Connectivity of the underlying graph.
  if (!vertices_.empty()) {
    std::set<VertexId> seen{base_vertex()};
    std::deque<VertexId> queue{base_vertex()};
    while (!queue.empty()) {
      const VertexId v = queue.front();
      queue.pop_front();
      for (EdgeId id : links_.at(v)) {
        const VertexId w = edges_.at(id).target;
        if (vertices_.count(w) != 0 && seen.insert(w).second) queue.push_back(w);
      }
    }
    if (seen.size() != vertices_.size()) r.violations.push_back({"underlying graph is disconnected", ""});
  }
  return r;
}

void GraphOfGroups::require_valid() const {
  const ValidationReport r = validate();
  if (!r.ok()) throw ValidationFailed("graph of groups failed validation:\n" + r.summary());
}

}  // namespace gogbench
