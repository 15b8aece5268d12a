#include "gogbench/normal_form.hpp"

#include <cctype>
#include <random>
#include <sstream>

#include "gogbench/errors.hpp"

namespace gogbench {

namespace {

std::int32_t read_int(std::string_view text, std::size_t& i) {
  const std::size_t begin = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == begin) throw ParseError("expected an integer id at offset " + std::to_string(begin));
  return static_cast<std::int32_t>(std::stol(std::string(text.substr(begin, i - begin))));
}

}  // namespace

GoGWord parse_gog_word(std::string_view text) {
  GoGWord w;
  std::size_t i = 0;
  while (i < text.size()) {
    const char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    if (ch == 'v') {
      ++i;
      const VertexId v = read_int(text, i);
      if (i >= text.size() || text[i] != '[') throw ParseError("expected '[' after v" + std::to_string(v));
      const std::size_t close = text.find(']', i);
      if (close == std::string_view::npos) throw ParseError("unterminated vertex letter v" + std::to_string(v));
      w.tokens.emplace_back(VertexLetter{v, parse_word(text.substr(i + 1, close - i - 1))});
      i = close + 1;
    } else if (ch == 't') {
      ++i;
      const EdgeId e = read_int(text, i);
      int sign = 1;
      if (text.substr(i, 3) == "^-1") {
        sign = -1;
        i += 3;
      }
      w.tokens.emplace_back(StableLetter{e, sign});
    } else if (ch == 'e') {
      ++i;
      w.tokens.emplace_back(EdgeCross{read_int(text, i)});
    } else {
      throw ParseError(std::string("unexpected character '") + ch + "' at offset " + std::to_string(i));
    }
    if (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) {
      throw ParseError("tokens must be separated by whitespace (offset " + std::to_string(i) + ")");
    }
  }
  return w;
}

std::string render_gog_word(const GoGWord& w) {
  std::ostringstream os;
  bool first = true;
  for (const auto& tok : w.tokens) {
    if (!first) os << ' ';
    first = false;
    if (const auto* vl = std::get_if<VertexLetter>(&tok)) {
      os << 'v' << vl->vertex << '[' << render_word(vl->word) << ']';
    } else if (const auto* sl = std::get_if<StableLetter>(&tok)) {
      os << 't' << sl->edge << (sl->sign < 0 ? "^-1" : "");
    } else {
      os << 'e' << std::get<EdgeCross>(tok).edge;
    }
  }
  return os.str();
}

std::size_t NormalFormHash::operator()(const NormalForm& nf) const noexcept {
  GroupElementHash eh;
  std::size_t h = std::hash<std::int32_t>{}(nf.start);
  for (std::size_t i = 0; i < nf.elements.size(); ++i) {
    h ^= eh(nf.elements[i]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    if (i < nf.edges.size()) h ^= std::hash<std::int32_t>{}(nf.edges[i]) + 0x7f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

VertexId terminal_vertex(const GraphOfGroups& g, const NormalForm& nf) {
  return nf.edges.empty() ? nf.start : g.edge(nf.edges.back()).target;
}

NormalForm identity_form(const GraphOfGroups& g) { return identity_form(g, g.base_vertex()); }

NormalForm identity_form(const GraphOfGroups& g, VertexId start) {
  NormalForm nf;
  nf.start = start;
  nf.elements.push_back(g.backend(start).identity());
  return nf;
}

bool is_identity_form(const GraphOfGroups& g, const NormalForm& nf) {
  return nf.edges.empty() && nf.start == g.base_vertex() && nf.elements.front() == g.backend(nf.start).identity();
}

void append_element(const GraphOfGroups& g, NormalForm& nf, const GroupElement& x) {
  const BackendSpec& b = g.backend(terminal_vertex(g, nf));
  nf.elements.back() = b.multiply(nf.elements.back(), x);
}

bool append_edge(const GraphOfGroups& g, NormalForm& nf, EdgeId e) {
  const OrientedEdge& oe = g.edge(e);
  const VertexId here = terminal_vertex(g, nf);
  if (oe.source != here) {
    throw MalformedWord("edge " + std::to_string(e) + " does not leave vertex " + std::to_string(here));
  }
  auto [rep, rest] = g.split_coset(nf.elements.back(), e);
  const bool trivial_rep = rep == g.backend(here).identity();
  if (trivial_rep && !nf.edges.empty() && nf.edges.back() == oe.reverse) {
    // e_m k e with k in G_e = G_{e_m-bar}: collapses to tau_e(k) at the
    // source of e_m.
    GroupElement pinched = g.tau(e, rest);
    nf.elements.pop_back();
    nf.edges.pop_back();
    const BackendSpec& b = g.backend(terminal_vertex(g, nf));
    nf.elements.back() = b.multiply(nf.elements.back(), pinched);
    return true;
  }
  nf.elements.back() = std::move(rep);
  nf.edges.push_back(e);
  nf.elements.push_back(g.tau(e, rest));
  return false;
}

NormalForm reduce(const GraphOfGroups& g, const GoGWord& w) {
  NormalForm nf = identity_form(g);
  for (std::size_t i = 0; i < w.tokens.size(); ++i) {
    const auto& tok = w.tokens[i];
    const VertexId here = terminal_vertex(g, nf);
    const std::string where = "token " + std::to_string(i) + ": ";
    if (const auto* vl = std::get_if<VertexLetter>(&tok)) {
      if (vl->vertex != here) {
        throw MalformedWord(where + "vertex letter for v" + std::to_string(vl->vertex) + " while at v" +
                            std::to_string(here));
      }
      GroupElement x;
      try {
        x = g.backend(here).canonicalize(vl->word);
      } catch (const UnknownGenerator& err) {
        throw MalformedWord(where + err.what());
      }
      append_element(g, nf, x);
      continue;
    }
    EdgeId e = 0;
    if (const auto* sl = std::get_if<StableLetter>(&tok)) {
      if (!g.has_edge(sl->edge)) throw MalformedWord(where + "unknown edge t" + std::to_string(sl->edge));
      if (g.in_spanning_tree(sl->edge)) {
        throw MalformedWord(where + "t" + std::to_string(sl->edge) + " is a spanning-tree edge; use e" +
                            std::to_string(sl->edge));
      }
      e = sl->sign > 0 ? sl->edge : g.edge(sl->edge).reverse;
    } else {
      const EdgeId id = std::get<EdgeCross>(tok).edge;
      if (!g.has_edge(id)) throw MalformedWord(where + "unknown edge e" + std::to_string(id));
      if (!g.in_spanning_tree(id)) {
        throw MalformedWord(where + "e" + std::to_string(id) + " is not a spanning-tree edge; use t" +
                            std::to_string(id));
      }
      e = id;
    }
    if (g.edge(e).source != here) {
      throw MalformedWord(where + "edge " + std::to_string(e) + " does not leave v" + std::to_string(here));
    }
    append_edge(g, nf, e);
  }
  return nf;
}

bool is_identity(const GraphOfGroups& g, const GoGWord& w) { return is_identity_form(g, reduce(g, w)); }

NormalForm multiply_nf(const GraphOfGroups& g, const NormalForm& a, const NormalForm& b) {
  if (terminal_vertex(g, a) != b.start) throw MalformedWord("normal forms are not composable");
  NormalForm out = a;
  for (std::size_t i = 0; i < b.elements.size(); ++i) {
    append_element(g, out, b.elements[i]);
    if (i < b.edges.size()) append_edge(g, out, b.edges[i]);
  }
  return out;
}

NormalForm invert_nf(const GraphOfGroups& g, const NormalForm& a) {
  NormalForm out = identity_form(g, terminal_vertex(g, a));
  for (std::size_t i = a.elements.size(); i-- > 0;) {
    const BackendSpec& b = g.backend(i == 0 ? a.start : g.edge(a.edges[i - 1]).target);
    append_element(g, out, b.invert(a.elements[i]));
    if (i > 0) append_edge(g, out, g.edge(a.edges[i - 1]).reverse);
  }
  return out;
}

GoGWord to_word(const GraphOfGroups& g, const NormalForm& nf) {
  GoGWord w;
  VertexId here = nf.start;
  for (std::size_t i = 0; i < nf.elements.size(); ++i) {
    w.tokens.emplace_back(VertexLetter{here, g.backend(here).spell(nf.elements[i])});
    if (i >= nf.edges.size()) break;
    const OrientedEdge& e = g.edge(nf.edges[i]);
    if (g.in_spanning_tree(e.id)) {
      w.tokens.emplace_back(EdgeCross{e.id});
    } else if (e.forward) {
      w.tokens.emplace_back(StableLetter{e.id, 1});
    } else {
      w.tokens.emplace_back(StableLetter{e.reverse, -1});
    }
    here = e.target;
  }
  return w;
}

std::string render_normal_form(const GraphOfGroups& g, const NormalForm& nf) {
  return render_gog_word(to_word(g, nf));
}

GoGWord inverse_word(const GraphOfGroups& g, const GoGWord& w) {
  GoGWord out;
  for (auto it = w.tokens.rbegin(); it != w.tokens.rend(); ++it) {
    if (const auto* vl = std::get_if<VertexLetter>(&*it)) {
      VertexLetter inv{vl->vertex, {}};
      for (auto s = vl->word.rbegin(); s != vl->word.rend(); ++s) inv.word.push_back({s->name, -s->sign});
      out.tokens.emplace_back(std::move(inv));
    } else if (const auto* sl = std::get_if<StableLetter>(&*it)) {
      out.tokens.emplace_back(StableLetter{sl->edge, -sl->sign});
    } else {
      out.tokens.emplace_back(EdgeCross{g.edge(std::get<EdgeCross>(*it).edge).reverse});
    }
  }
  return out;
}

GoGWord random_word(std::uint64_t seed, std::size_t length, const GraphOfGroups& g) {
  std::mt19937_64 rng(seed);
  GoGWord w;
  VertexId here = g.base_vertex();
  for (std::size_t i = 0; i < length; ++i) {
    const BackendSpec& b = g.backend(here);
    const std::vector<EdgeId>& link = g.link(here);
    const std::size_t ngens = 2 * (b.free_rank() + b.abelian_rank());
    const std::size_t pick = static_cast<std::size_t>(rng() % (ngens + link.size()));
    if (pick < ngens) {
      const std::size_t gen = pick / 2;
      const int sign = pick % 2 == 0 ? 1 : -1;
      const std::string& name =
          gen < b.free_rank() ? b.free_names()[gen] : b.abelian_names()[gen - b.free_rank()];
      w.tokens.emplace_back(VertexLetter{here, {{name, sign}}});
      continue;
    }
    const OrientedEdge& e = g.edge(link[pick - ngens]);
    if (g.in_spanning_tree(e.id)) {
      w.tokens.emplace_back(EdgeCross{e.id});
    } else if (e.forward) {
      w.tokens.emplace_back(StableLetter{e.id, 1});
    } else {
      w.tokens.emplace_back(StableLetter{e.reverse, -1});
    }
    here = e.target;
  }
  return w;
}

}  // namespace gogbench
