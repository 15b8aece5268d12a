#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gogbench/group.hpp"
#include "gogbench/lattice.hpp"

namespace gogbench {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;

struct VertexGroup {
  VertexId id = 0;
  std::string name;
  BackendSpec backend;
};

/// One oriented edge e with its edge map: tau_e(basis[i]) = image[i].
struct OrientedEdge {
  EdgeId id = 0;
  std::string name;
  VertexId source = 0;
  VertexId target = 0;
  EdgeId reverse = 0;
  bool forward = true;
  std::array<GroupElement, 2> basis;  // in the source vertex group
  std::array<GroupElement, 2> image;  // in the target vertex group
};

/// Coordinates of an edge-group element in the declared basis.
struct EdgeCoordinates {
  std::int64_t k1 = 0;
  std::int64_t k2 = 0;

  bool operator==(const EdgeCoordinates&) const = default;
};

/// An edge subgroup of the split shape <(root, 0)> x <(1, center_step)> in
/// F x Z, where root is not a proper power. `basis_coords` holds the declared
/// basis in (root exponent, central coordinate) terms.
struct EdgeSubgroup {
  FreeWord root;
  std::int64_t center_step = 1;
  IntMat2 basis_coords;
};

/// g <(root,0)> x <(1,c)> g^-1 = <(g root g^-1, 0)> x <(1,c)>.
struct ConjugateEdgeSubgroup {
  FreeWord generator;
  std::int64_t center_step = 1;

  bool operator==(const ConjugateEdgeSubgroup&) const = default;
};

struct Violation {
  std::string what;
  std::string witness;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

/// The graph-of-groups datum. Construction never throws on semantic problems;
/// `validate` lists them, and queries that need a well-formed edge throw
/// ValidationFailed.
class GraphOfGroups {
 public:
  GraphOfGroups(std::vector<VertexGroup> vertices, std::vector<OrientedEdge> edges,
                std::optional<std::vector<EdgeId>> tree_override = std::nullopt);

  const VertexGroup& vertex(VertexId v) const;
  const OrientedEdge& edge(EdgeId e) const;
  bool has_vertex(VertexId v) const { return vertices_.count(v) != 0; }
  bool has_edge(EdgeId e) const { return edges_.count(e) != 0; }
  const BackendSpec& backend(VertexId v) const { return vertex(v).backend; }

  std::vector<VertexId> vertex_ids() const;
  std::vector<EdgeId> edge_ids() const;
  /// Least vertex id; the basepoint of fundamental groups and balls.
  VertexId base_vertex() const;
  /// Outgoing oriented edges at v, ascending by id.
  const std::vector<EdgeId>& link(VertexId v) const;
  bool in_spanning_tree(EdgeId e) const;

  /// Shape of G_e inside the source vertex group.
  const EdgeSubgroup& edge_subgroup(EdgeId e) const;

  std::optional<EdgeCoordinates> edge_membership(const GroupElement& x, EdgeId e) const;
  /// basis[0]^k1 basis[1]^k2 in the source group.
  GroupElement edge_element(EdgeId e, EdgeCoordinates k) const;
  /// tau_e(x) for x in G_e; throws ValidationFailed when x is not in G_e.
  GroupElement tau(EdgeId e, const GroupElement& x) const;
  /// tau_e on coordinates, expressed in the declared basis of the reverse edge.
  EdgeCoordinates tau_coordinates(EdgeId e, EdgeCoordinates k) const;

  /// Shortlex-least representative of the left coset x G_e.
  GroupElement coset_rep(const GroupElement& x, EdgeId e) const;
  /// x = rep * rest with rep = coset_rep(x, e) and rest in G_e.
  std::pair<GroupElement, GroupElement> split_coset(const GroupElement& x, EdgeId e) const;

  ConjugateEdgeSubgroup conjugate_edge_subgroup(const GroupElement& g, EdgeId e) const;

  ValidationReport validate() const;
  /// Throws ValidationFailed carrying the report summary.
  void require_valid() const;

 private:
  struct EdgeAnalysis {
    std::optional<EdgeSubgroup> source_shape;
    std::optional<EdgeSubgroup> target_shape;
    std::vector<Violation> problems;
  };

  EdgeAnalysis analyze(const OrientedEdge& e) const;
  void build_spanning_tree(const std::optional<std::vector<EdgeId>>& tree_override);
  const EdgeSubgroup& target_subgroup(EdgeId e) const;

  std::map<VertexId, VertexGroup> vertices_;
  std::map<EdgeId, OrientedEdge> edges_;
  std::map<VertexId, std::vector<EdgeId>> links_;
  std::map<EdgeId, EdgeAnalysis> analysis_;
  std::map<EdgeId, bool> tree_edges_;
  std::vector<Violation> structural_;
};

/// Checks that the split shape holds for a pair of commuting elements of a
/// Product backend; returns the shape or a violation message and witness.
std::optional<EdgeSubgroup> split_edge_shape(const BackendSpec& b, const std::array<GroupElement, 2>& pair,
                                             Violation* why);

}  // namespace gogbench
