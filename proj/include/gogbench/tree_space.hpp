#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <unordered_map>
#include <variant>
#include <vector>

#include "gogbench/graph_of_groups.hpp"
#include "gogbench/normal_form.hpp"

namespace gogbench {

/// A point (v, g) of the tree of spaces: g is a groupoid element ending at v.
struct SpaceVertex {
  VertexId gamma = 0;
  NormalForm element;
};

inline constexpr std::uint32_t kOutside = std::numeric_limits<std::uint32_t>::max();

/// Finite ball of the tree of spaces around (base vertex, identity). Unit
/// edges are generator steps inside a vertex space and attaching intervals
/// x -- alpha_e(x). The graph is the induced subgraph on the ball, so
/// distances are hop distances inside the ball (upper bounds for the true
/// metric; see `certified`).
class BallGraph {
 public:
  struct Crossing {
    EdgeId edge = 0;
    std::uint32_t target = kOutside;
  };

  static BallGraph build(const GraphOfGroups& g, int radius, const Budget& budget = {});

  const GraphOfGroups& graph() const { return *graph_; }
  int radius() const { return radius_; }
  std::size_t size() const { return forms_.size(); }
  std::size_t edge_count() const { return adjacency_.size() / 2; }
  static constexpr std::size_t basepoint() { return 0; }

  const NormalForm& form(std::size_t i) const { return forms_[i]; }
  VertexId gamma(std::size_t i) const { return gamma_[i]; }
  SpaceVertex vertex(std::size_t i) const { return {gamma_[i], forms_[i]}; }
  /// Local coordinate of the point inside its vertex space.
  const GroupElement& local(std::size_t i) const { return forms_[i].elements.back(); }
  int depth(std::size_t i) const { return depth_[i]; }

  std::optional<std::size_t> find(const NormalForm& nf) const;
  /// Throws NotInBall.
  std::size_t index_of(const SpaceVertex& x) const;

  std::span<const std::uint32_t> neighbors(std::size_t i) const {
    return {adjacency_.data() + offsets_[i], adjacency_.data() + offsets_[i + 1]};
  }
  /// Generator steps in vertex-group generator order; kOutside if the
  /// neighbour is beyond the radius.
  std::span<const std::uint32_t> generator_steps(std::size_t i) const {
    return {gen_steps_.data() + gen_offsets_[i], gen_steps_.data() + gen_offsets_[i + 1]};
  }
  /// One entry per edge in the link of the point's Gamma-vertex.
  std::span<const Crossing> crossings(std::size_t i) const {
    return {crossings_.data() + cross_offsets_[i], crossings_.data() + cross_offsets_[i + 1]};
  }

  /// Hop distances from `source` inside the ball (-1 never occurs: the ball
  /// is connected).
  std::vector<int> distances_from(std::size_t source) const;
  /// Multi-source variant.
  std::vector<int> distances_from(std::span<const std::uint32_t> sources) const;
  int distance(std::size_t a, std::size_t b) const;

  /// True when a ball distance d(a,b) is provably the distance in the whole
  /// tree of spaces: either d + max(depth a, depth b) <= radius, or one of
  /// the endpoints is at least d away from every vertex with a neighbour
  /// beyond the radius.
  bool certified(std::size_t a, std::size_t b, int d) const;
  int distance_to_frontier(std::size_t i) const { return frontier_distance_[i]; }

 private:
  const GraphOfGroups* graph_ = nullptr;
  int radius_ = 0;
  std::vector<NormalForm> forms_;
  std::vector<VertexId> gamma_;
  std::vector<int> depth_;
  std::unordered_map<NormalForm, std::uint32_t, NormalFormHash> index_;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> adjacency_;
  std::vector<std::uint32_t> gen_steps_;
  std::vector<std::uint32_t> gen_offsets_;
  std::vector<Crossing> crossings_;
  std::vector<std::uint32_t> cross_offsets_;
  std::vector<int> frontier_distance_;
};

/// Vertex of the Bass-Serre tree: the coset gG_v, keyed by the normal form
/// of its canonical representative (last element the identity).
struct TreeNode {
  NormalForm rep;
  bool operator==(const TreeNode&) const = default;
};

/// Oriented edge gG_e of the Bass-Serre tree: the representative's last
/// element is the coset representative for G_e.
struct TreeEdgeId {
  NormalForm rep;
  EdgeId edge = 0;
  bool operator==(const TreeEdgeId&) const = default;
};

TreeNode node_of(const GraphOfGroups& g, const NormalForm& x);
/// The lift of v (resp. e) reached from the base vertex along spanning-tree
/// edges with trivial labels.
TreeNode base_node(const GraphOfGroups& g, VertexId v);
TreeEdgeId base_edge(const GraphOfGroups& g, EdgeId e);
TreeEdgeId edge_location(const GraphOfGroups& g, const NormalForm& x, EdgeId e);
TreeEdgeId reverse_location(const GraphOfGroups& g, const TreeEdgeId& e);
TreeNode tree_source(const GraphOfGroups& g, const TreeEdgeId& e);
TreeNode tree_target(const GraphOfGroups& g, const TreeEdgeId& e);

struct SubspaceSelection {
  std::variant<TreeNode, TreeEdgeId> where;
  std::vector<std::uint32_t> members;  // ascending ball indices
  std::vector<bool> mask;              // size of the ball

  bool contains(std::size_t i) const { return mask[i]; }
  bool empty() const { return members.empty(); }
  std::size_t size() const { return members.size(); }
};

/// Throws UnknownTreeLocation for a malformed location key.
SubspaceSelection subspace(const BallGraph& ball, const TreeNode& t);
SubspaceSelection subspace(const BallGraph& ball, const TreeEdgeId& t);

/// Hausdorff distance of two selections measured in the ball. Both the sets
/// and the metric are truncated, so points near the sphere of radius r can
/// push the value either way. Throws EmptySelection.
int hausdorff_distance(const BallGraph& ball, const SubspaceSelection& a, const SubspaceSelection& b);

/// Finite part of the Bass-Serre tree realised by a ball: nodes whose vertex
/// space meets the ball and edges realised by an attaching interval inside
/// the ball.
struct TreeBall {
  std::vector<TreeNode> nodes;
  std::vector<TreeEdgeId> edges;  // oriented; both orientations present
  std::vector<std::pair<std::size_t, std::size_t>> ends;
  std::vector<std::size_t> reverse;
  std::vector<std::vector<std::size_t>> outgoing;

  std::size_t degree(std::size_t node) const { return outgoing[node].size(); }
  std::optional<std::size_t> find_node(const TreeNode& t) const;
  std::optional<std::size_t> find_edge(const TreeEdgeId& t) const;
};

TreeBall tree_ball(const BallGraph& ball);
TreeBall tree_ball(const GraphOfGroups& g, int radius, const Budget& budget = {});

struct TreeRef {
  bool is_edge = false;
  std::size_t index = 0;
};

/// b is strictly between a and c when mu_a and mu_c lie in different
/// components of T minus mu_b, where mu_e sits 1/3 along e from e_-. The
/// weak form also accepts b == a or b == c.
bool between(const TreeBall& t, TreeRef a, TreeRef b, TreeRef c, bool strict = true);

/// Partition of a ball relative to an edge space X_e: 0 on X_e, +1 if the
/// point reaches X_ebar inside the ball without touching X_e, -1 otherwise.
struct SidesDecomposition {
  std::vector<int> side;
  std::size_t on_edge = 0;
  std::size_t plus = 0;
  std::size_t minus = 0;
  /// The sign is constant on every vertex space (outside X_e).
  bool constant_on_vertex_spaces = true;
};

/// Throws EmptyEdgeSpace.
SidesDecomposition sides_decomposition(const BallGraph& ball, const TreeEdgeId& e);

}  // namespace gogbench
