#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gogbench/free_word.hpp"

namespace gogbench {

struct GeneratorSymbol {
  std::string name;
  int sign = 1;

  bool operator==(const GeneratorSymbol&) const = default;
};

using Word = std::vector<GeneratorSymbol>;

/// Parses "x y^-1 z" into symbols. Throws ParseError on malformed tokens.
Word parse_word(std::string_view text);
std::string render_word(const Word& w);

enum class BackendKind { Free, FreeAbelian, Product };

/// Canonical element of a concrete backend. For Free only `free` is used, for
/// FreeAbelian only `abelian`, for Product both (with a single abelian
/// coordinate, the central kernel generator). Equality is structural.
struct GroupElement {
  BackendKind kind = BackendKind::Free;
  FreeWord free;
  std::vector<std::int64_t> abelian;

  bool operator==(const GroupElement&) const = default;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const noexcept;
};

/// Description of a concrete group with its standard generating set.
class BackendSpec {
 public:
  BackendSpec() = default;

  static BackendSpec free(std::vector<std::string> names);
  static BackendSpec free_abelian(std::vector<std::string> names);
  /// F(free_names) x Z(center_name).
  static BackendSpec product(std::vector<std::string> free_names, std::string center_name);

  BackendKind kind() const { return kind_; }
  std::size_t free_rank() const { return free_names_.size(); }
  std::size_t abelian_rank() const { return abelian_names_.size(); }
  const std::vector<std::string>& free_names() const { return free_names_; }
  const std::vector<std::string>& abelian_names() const { return abelian_names_; }

  GroupElement identity() const;
  bool owns(const GroupElement& g) const;

  /// Canonical form of a word; throws UnknownGenerator.
  GroupElement canonicalize(const Word& w) const;
  GroupElement parse_element(std::string_view text) const { return canonicalize(parse_word(text)); }

  GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
  GroupElement invert(const GroupElement& a) const;
  GroupElement power(const GroupElement& a, std::int64_t k) const;

  /// Word length for the standard generators: reduced length, l1 norm, or
  /// their sum for products.
  std::int64_t word_length(const GroupElement& a) const;

  /// The symmetric generating set, ordered by generator rank (x, x^-1, y, ...)
  /// with free generators before abelian ones.
  std::vector<GroupElement> generators() const;

  /// Canonical word spelling g: the reduced free word followed by abelian
  /// letters. This is the stable textual form.
  Word spell(const GroupElement& g) const;
  std::string render(const GroupElement& g) const { return render_word(spell(g)); }

  /// Shortlex order on spellings (length, then generator rank).
  bool shortlex_less(const GroupElement& a, const GroupElement& b) const;

  /// Element of a Product backend from its parts.
  GroupElement make_product(FreeWord free, std::int64_t center) const;

  bool operator==(const BackendSpec&) const = default;

 private:
  void check_same(const GroupElement& a) const;
  std::string describe() const;

  BackendKind kind_ = BackendKind::Free;
  std::vector<std::string> free_names_;
  std::vector<std::string> abelian_names_;
};

/// Memory cap for exhaustive enumerations.
struct Budget {
  std::size_t max_vertices = 5'000'000;
};

/// All elements of word length <= r, in breadth-first (length, then
/// generator order) order. Throws BudgetExceeded.
std::vector<GroupElement> ball(const BackendSpec& b, int r, const Budget& budget = {});

}  // namespace gogbench
