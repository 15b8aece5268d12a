#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gogbench/graph_of_groups.hpp"

namespace gogbench {

struct VertexLetter {
  VertexId vertex = 0;
  Word word;
};

/// t_e^sign for an edge outside the spanning tree.
struct StableLetter {
  EdgeId edge = 0;
  int sign = 1;
};

/// Silent crossing of a spanning-tree edge.
struct EdgeCross {
  EdgeId edge = 0;
};

using GoGToken = std::variant<VertexLetter, StableLetter, EdgeCross>;

/// A path word in the graph of groups, read from the base vertex.
struct GoGWord {
  std::vector<GoGToken> tokens;
};

/// Parses `v3[x y^-1] t5 t5^-1 e2`. Syntax only; graph compatibility is
/// checked by reduce(). Throws ParseError.
GoGWord parse_gog_word(std::string_view text);
std::string render_gog_word(const GoGWord& w);

/// g0 e1 g1 ... en gn: every g_i with i < n is the coset representative of
/// g_i G_{e_{i+1}}, and no e g e-bar with g in G_{e-bar} survives.
struct NormalForm {
  VertexId start = 0;
  std::vector<GroupElement> elements;  // size edges.size() + 1
  std::vector<EdgeId> edges;

  bool operator==(const NormalForm&) const = default;
};

struct NormalFormHash {
  std::size_t operator()(const NormalForm& nf) const noexcept;
};

VertexId terminal_vertex(const GraphOfGroups& g, const NormalForm& nf);

NormalForm identity_form(const GraphOfGroups& g);
NormalForm identity_form(const GraphOfGroups& g, VertexId start);
bool is_identity_form(const GraphOfGroups& g, const NormalForm& nf);

/// Right multiplication by an element of the terminal vertex group.
void append_element(const GraphOfGroups& g, NormalForm& nf, const GroupElement& x);
/// Right multiplication by an edge leaving the terminal vertex, keeping the
/// form canonical (coset split, then pinch if the edge backtracks). Returns
/// true if a pinch happened.
bool append_edge(const GraphOfGroups& g, NormalForm& nf, EdgeId e);

/// Throws MalformedWord when a token does not fit the current vertex.
NormalForm reduce(const GraphOfGroups& g, const GoGWord& w);
bool is_identity(const GraphOfGroups& g, const GoGWord& w);

/// a * b; requires terminal(a) == b.start.
NormalForm multiply_nf(const GraphOfGroups& g, const NormalForm& a, const NormalForm& b);
NormalForm invert_nf(const GraphOfGroups& g, const NormalForm& a);

/// Token form of a normal form (stable letters use the forward orientation).
GoGWord to_word(const GraphOfGroups& g, const NormalForm& nf);
std::string render_normal_form(const GraphOfGroups& g, const NormalForm& nf);

/// Formal inverse of a well-formed word starting at the base vertex.
GoGWord inverse_word(const GraphOfGroups& g, const GoGWord& w);

/// Deterministic random walk of `length` tokens from the base vertex: each
/// token is a single generator letter of the current vertex group or a
/// crossing of an edge in its link, chosen uniformly.
GoGWord random_word(std::uint64_t seed, std::size_t length, const GraphOfGroups& g);

}  // namespace gogbench
