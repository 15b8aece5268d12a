#include "gogbench/group.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <deque>
#include <sstream>
#include <unordered_set>

#include "gogbench/errors.hpp"

namespace gogbench {

namespace {

bool valid_name(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

void check_names(const std::vector<std::string>& names) {
  std::unordered_set<std::string> seen;
  for (const auto& n : names) {
    if (!valid_name(n)) throw SchemaError("invalid generator name '" + n + "'");
    if (!seen.insert(n).second) throw SchemaError("duplicate generator name '" + n + "'");
  }
}

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

}  // namespace

Word parse_word(std::string_view text) {
  Word out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    std::string_view tok = text.substr(i, j - i);
    int sign = 1;
    if (auto caret = tok.find('^'); caret != std::string_view::npos) {
      if (tok.substr(caret) != "^-1") throw ParseError("bad exponent in token '" + std::string(tok) + "'");
      sign = -1;
      tok = tok.substr(0, caret);
    }
    if (!valid_name(tok)) throw ParseError("bad generator token '" + std::string(tok) + "'");
    out.push_back({std::string(tok), sign});
    i = j;
  }
  return out;
}

std::string render_word(const Word& w) {
  std::string out;
  for (const auto& s : w) {
    if (!out.empty()) out += ' ';
    out += s.name;
    if (s.sign < 0) out += "^-1";
  }
  return out;
}

std::size_t GroupElementHash::operator()(const GroupElement& g) const noexcept {
  std::uint64_t h = static_cast<std::uint64_t>(g.kind) + 0x51ed27ULL;
  for (FreeLetter l : g.free) h = mix(h, static_cast<std::uint64_t>(static_cast<std::int64_t>(l)));
  h = mix(h, 0xabcdefULL);
  for (std::int64_t v : g.abelian) h = mix(h, static_cast<std::uint64_t>(v));
  return static_cast<std::size_t>(h);
}

BackendSpec BackendSpec::free(std::vector<std::string> names) {
  if (names.empty()) throw SchemaError("free backend needs rank >= 1");
  check_names(names);
  BackendSpec b;
  b.kind_ = BackendKind::Free;
  b.free_names_ = std::move(names);
  return b;
}

BackendSpec BackendSpec::free_abelian(std::vector<std::string> names) {
  if (names.empty()) throw SchemaError("free abelian backend needs rank >= 1");
  check_names(names);
  BackendSpec b;
  b.kind_ = BackendKind::FreeAbelian;
  b.abelian_names_ = std::move(names);
  return b;
}

BackendSpec BackendSpec::product(std::vector<std::string> free_names, std::string center_name) {
  if (free_names.empty()) throw SchemaError("product backend needs free rank >= 1");
  std::vector<std::string> all = free_names;
  all.push_back(center_name);
  check_names(all);
  BackendSpec b;
  b.kind_ = BackendKind::Product;
  b.free_names_ = std::move(free_names);
  b.abelian_names_ = {std::move(center_name)};
  return b;
}

std::string BackendSpec::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case BackendKind::Free: os << "Free(" << free_rank() << ")"; break;
    case BackendKind::FreeAbelian: os << "FreeAbelian(" << abelian_rank() << ")"; break;
    case BackendKind::Product: os << "Product(Free(" << free_rank() << "), FreeAbelian(1))"; break;
  }
  return os.str();
}

GroupElement BackendSpec::identity() const {
  GroupElement g;
  g.kind = kind_;
  g.abelian.assign(abelian_rank(), 0);
  return g;
}

bool BackendSpec::owns(const GroupElement& g) const {
  if (g.kind != kind_ || g.abelian.size() != abelian_rank()) return false;
  const auto k = static_cast<FreeLetter>(free_rank());
  return std::all_of(g.free.begin(), g.free.end(), [k](FreeLetter l) { return l != 0 && l >= -k && l <= k; }) &&
         is_reduced(g.free);
}

void BackendSpec::check_same(const GroupElement& a) const {
  if (!owns(a)) throw BackendMismatch("element does not belong to " + describe());
}

GroupElement BackendSpec::canonicalize(const Word& w) const {
  GroupElement g = identity();
  for (const auto& s : w) {
    auto fit = std::find(free_names_.begin(), free_names_.end(), s.name);
    if (fit != free_names_.end()) {
      const auto idx = static_cast<FreeLetter>(fit - free_names_.begin() + 1);
      push_reduced(g.free, static_cast<FreeLetter>(s.sign * idx));
      continue;
    }
    auto ait = std::find(abelian_names_.begin(), abelian_names_.end(), s.name);
    if (ait != abelian_names_.end()) {
      g.abelian[static_cast<std::size_t>(ait - abelian_names_.begin())] += s.sign;
      continue;
    }
    throw UnknownGenerator("generator '" + s.name + "' is not in " + describe());
  }
  return g;
}

GroupElement BackendSpec::multiply(const GroupElement& a, const GroupElement& b) const {
  check_same(a);
  check_same(b);
  GroupElement out;
  out.kind = kind_;
  out.free = free_multiply(a.free, b.free);
  out.abelian.resize(abelian_rank());
  for (std::size_t i = 0; i < abelian_rank(); ++i) out.abelian[i] = a.abelian[i] + b.abelian[i];
  return out;
}

GroupElement BackendSpec::invert(const GroupElement& a) const {
  check_same(a);
  GroupElement out;
  out.kind = kind_;
  out.free = free_inverse(a.free);
  out.abelian.resize(abelian_rank());
  for (std::size_t i = 0; i < abelian_rank(); ++i) out.abelian[i] = -a.abelian[i];
  return out;
}

GroupElement BackendSpec::power(const GroupElement& a, std::int64_t k) const {
  check_same(a);
  GroupElement out;
  out.kind = kind_;
  out.free = free_power(a.free, k);
  out.abelian.resize(abelian_rank());
  for (std::size_t i = 0; i < abelian_rank(); ++i) out.abelian[i] = a.abelian[i] * k;
  return out;
}

std::int64_t BackendSpec::word_length(const GroupElement& a) const {
  std::int64_t n = static_cast<std::int64_t>(a.free.size());
  for (std::int64_t v : a.abelian) n += std::llabs(v);
  return n;
}

std::vector<GroupElement> BackendSpec::generators() const {
  std::vector<GroupElement> out;
  for (std::size_t i = 0; i < free_rank(); ++i) {
    for (int sign : {1, -1}) {
      GroupElement g = identity();
      g.free.push_back(static_cast<FreeLetter>(sign * static_cast<int>(i + 1)));
      out.push_back(std::move(g));
    }
  }
  for (std::size_t i = 0; i < abelian_rank(); ++i) {
    for (int sign : {1, -1}) {
      GroupElement g = identity();
      g.abelian[i] = sign;
      out.push_back(std::move(g));
    }
  }
  return out;
}

Word BackendSpec::spell(const GroupElement& g) const {
  check_same(g);
  Word w;
  for (FreeLetter l : g.free) {
    w.push_back({free_names_[static_cast<std::size_t>(std::abs(l) - 1)], l > 0 ? 1 : -1});
  }
  for (std::size_t i = 0; i < abelian_rank(); ++i) {
    const std::int64_t v = g.abelian[i];
    for (std::int64_t j = 0; j < std::llabs(v); ++j) w.push_back({abelian_names_[i], v > 0 ? 1 : -1});
  }
  return w;
}

bool BackendSpec::shortlex_less(const GroupElement& a, const GroupElement& b) const {
  const std::int64_t la = word_length(a);
  const std::int64_t lb = word_length(b);
  if (la != lb) return la < lb;
  // Same total length: compare rank sequences of the spellings.
  auto ranks = [this](const GroupElement& g) {
    std::vector<int> r;
    r.reserve(static_cast<std::size_t>(word_length(g)));
    for (FreeLetter l : g.free) r.push_back(letter_rank(l));
    const int base = 2 * static_cast<int>(free_rank());
    for (std::size_t i = 0; i < abelian_rank(); ++i) {
      const std::int64_t v = g.abelian[i];
      for (std::int64_t j = 0; j < std::llabs(v); ++j) r.push_back(base + 2 * static_cast<int>(i) + (v < 0 ? 1 : 0));
    }
    return r;
  };
  return ranks(a) < ranks(b);
}

GroupElement BackendSpec::make_product(FreeWord free, std::int64_t center) const {
  if (kind_ != BackendKind::Product) throw BackendMismatch("make_product on " + describe());
  GroupElement g;
  g.kind = BackendKind::Product;
  g.free = std::move(free);
  g.abelian = {center};
  check_same(g);
  return g;
}

std::vector<GroupElement> ball(const BackendSpec& b, int r, const Budget& budget) {
  std::vector<GroupElement> out;
  std::unordered_set<GroupElement, GroupElementHash> seen;
  const auto gens = b.generators();
  out.push_back(b.identity());
  seen.insert(out.front());
  std::size_t layer_begin = 0;
  for (int radius = 1; radius <= r; ++radius) {
    const std::size_t layer_end = out.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (const auto& s : gens) {
        GroupElement next = b.multiply(out[i], s);
        if (seen.insert(next).second) {
          if (out.size() >= budget.max_vertices) {
            throw BudgetExceeded("group ball exceeds " + std::to_string(budget.max_vertices) + " elements");
          }
          out.push_back(std::move(next));
        }
      }
    }
    layer_begin = layer_end;
  }
  return out;
}

}  // namespace gogbench
