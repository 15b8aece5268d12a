#pragma once

#include <random>

#include "gogbench/normal_form.hpp"

// Random rewriting of path words by relations that hold in every graph of
// groups; used to check that reduction is well defined.
namespace word_tools {

using namespace gogbench;

inline GoGToken crossing_token(const GraphOfGroups& g, EdgeId e) {
  const OrientedEdge& oe = g.edge(e);
  if (g.in_spanning_tree(e)) return EdgeCross{e};
  if (oe.forward) return StableLetter{e, 1};
  return StableLetter{oe.reverse, -1};
}

inline VertexLetter letter(const GraphOfGroups& g, VertexId v, const GroupElement& x) {
  return {v, g.backend(v).spell(x)};
}

/// Vertex reached after each prefix: result[i] is the vertex before token i.
inline std::vector<VertexId> vertices_along(const GraphOfGroups& g, const GoGWord& w) {
  std::vector<VertexId> out;
  VertexId here = g.base_vertex();
  for (const auto& tok : w.tokens) {
    out.push_back(here);
    if (const auto* s = std::get_if<StableLetter>(&tok)) {
      here = g.edge(s->sign > 0 ? s->edge : g.edge(s->edge).reverse).target;
    } else if (const auto* c = std::get_if<EdgeCross>(&tok)) {
      here = g.edge(c->edge).target;
    }
  }
  out.push_back(here);
  return out;
}

/// Inserts `count` trivial subwords at random positions: s s^-1 for a vertex
/// generator, e e-bar for an edge, or e tau_e(k) e-bar k^-1 for k in G_e.
inline GoGWord insert_trivial(const GraphOfGroups& g, GoGWord w, std::mt19937_64& rng, int count) {
  for (int n = 0; n < count; ++n) {
    const auto at = vertices_along(g, w);
    const std::size_t pos = rng() % (w.tokens.size() + 1);
    const VertexId v = at[pos];
    const BackendSpec& b = g.backend(v);
    std::vector<GoGToken> ins;
    const auto& link = g.link(v);
    const int kind = static_cast<int>(rng() % 3);
    if (kind == 0 || link.empty()) {
      const auto gens = b.generators();
      const GroupElement& s = gens[rng() % gens.size()];
      ins.emplace_back(letter(g, v, s));
      ins.emplace_back(letter(g, v, b.invert(s)));
    } else {
      const EdgeId e = link[rng() % link.size()];
      const OrientedEdge& oe = g.edge(e);
      if (kind == 1) {
        ins.push_back(crossing_token(g, e));
        ins.push_back(crossing_token(g, oe.reverse));
      } else {
        const EdgeCoordinates k{static_cast<std::int64_t>(rng() % 5) - 2, static_cast<std::int64_t>(rng() % 5) - 2};
        const GroupElement x = g.edge_element(e, k);
        ins.push_back(crossing_token(g, e));
        ins.emplace_back(letter(g, oe.target, g.tau(e, x)));
        ins.push_back(crossing_token(g, oe.reverse));
        ins.emplace_back(letter(g, v, b.invert(x)));
      }
    }
    w.tokens.insert(w.tokens.begin() + static_cast<long>(pos), ins.begin(), ins.end());
  }
  return w;
}

inline GoGWord concat(const GoGWord& a, const GoGWord& b) {
  GoGWord out = a;
  out.tokens.insert(out.tokens.end(), b.tokens.begin(), b.tokens.end());
  return out;
}

}  // namespace word_tools
