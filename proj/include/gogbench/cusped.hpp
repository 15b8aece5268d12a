#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gogbench/group.hpp"

namespace gogbench {

/// Undirected simple graph on vertices 0..n-1.
class FiniteGraph {
 public:
  explicit FiniteGraph(std::size_t n = 0) : adj_(n) {}

  std::size_t add_vertex();
  /// Loops and repeated edges are ignored.
  void add_edge(std::size_t a, std::size_t b);
  bool has_edge(std::size_t a, std::size_t b) const;

  std::size_t size() const { return adj_.size(); }
  std::size_t edge_count() const { return edges_; }
  const std::vector<std::uint32_t>& neighbors(std::size_t i) const { return adj_[i]; }

  /// Hop distances; -1 for unreachable vertices.
  std::vector<int> distances_from(std::size_t source) const;
  bool connected() const;

 private:
  std::vector<std::vector<std::uint32_t>> adj_;
  std::size_t edges_ = 0;
};

FiniteGraph path_graph(std::size_t n);
FiniteGraph cycle_graph(std::size_t n);

/// A value in (1/2)Z stored as twice itself.
struct HalfInteger {
  std::int64_t twice = 0;

  double value() const { return static_cast<double>(twice) / 2.0; }
  std::string str() const;
  auto operator<=>(const HalfInteger&) const = default;
};

/// Vertices (t, n), t in T and 0 <= n <= D, stored at index n |T| + t.
struct HoroballGraph {
  FiniteGraph graph;
  std::size_t base_size = 0;
  int depth = 0;

  std::size_t at(std::size_t t, int n) const { return static_cast<std::size_t>(n) * base_size + t; }
};

/// Vertical edges (t,n)-(t,n+1) and horizontal edges (s,n)-(t,n) whenever
/// 0 < d_T(s,t) <= 2^n. Throws DisconnectedBase.
HoroballGraph build_horoball(const FiniteGraph& base, int depth);

/// Cayley ball of radius r with a truncated horoball of depth D glued on
/// every coset g<u> that meets the ball (base graph: the coset's full
/// subgraph in the ball).
struct CuspedGraph {
  FiniteGraph graph;
  std::vector<GroupElement> cayley;  // graph vertices [0, cayley.size())
  std::vector<int> depth;            // 0 on the Cayley ball
  std::vector<std::uint32_t> over;   // Cayley vertex below each vertex
  std::size_t coset_count = 0;
  int radius = 0;
  int max_depth = 0;
  /// Vertices within distance 1 of the truncation frontier: Cayley points at
  /// length r, horoball vertices above them, and depth D when D > 0.
  std::vector<bool> guarded;
};

/// `u` must be a single generator of `b`. Throws BudgetExceeded, SchemaError.
CuspedGraph build_cusped(const BackendSpec& b, const GroupElement& u, int radius, int depth,
                         const Budget& budget = {});

enum class DeltaMethod {
  FourPoint,  // every quadruple of certified vertices
  Basepoint,  // quadruples through a fixed basepoint (a lower bound)
  MaxMin,     // max over w of the max-min product of Gromov products at w
};

std::string to_string(DeltaMethod m);

struct DeltaOptions {
  const std::vector<bool>* excluded = nullptr;  // guard mask; excluded vertices are not certified
  std::size_t basepoint = 0;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct DeltaEstimate {
  HalfInteger delta;
  DeltaMethod method = DeltaMethod::FourPoint;
  std::size_t certified_vertices = 0;
  std::uint64_t certified_quadruples = 0;
  bool guarded = false;
};

/// Throws Disconnected.
DeltaEstimate estimate_delta(const FiniteGraph& g, DeltaMethod method, const DeltaOptions& options = {});

/// (x|y)_w. Throws Disconnected.
HalfInteger gromov_product(const FiniteGraph& g, std::size_t x, std::size_t y, std::size_t w);

}  // namespace gogbench
