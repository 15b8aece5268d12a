#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace gogbench {

// A letter of a free group on generators 0..k-1 is stored as +(i+1) for the
// generator i and -(i+1) for its inverse.
using FreeLetter = std::int16_t;
using FreeWord = std::vector<FreeLetter>;

/// Position of a letter in the fixed generator order x0 < x0^-1 < x1 < ...
inline int letter_rank(FreeLetter l) { return l > 0 ? 2 * (l - 1) : 2 * (-l - 1) + 1; }

/// Appends `l` to a freely reduced word, cancelling against the last letter.
inline void push_reduced(FreeWord& w, FreeLetter l) {
  if (!w.empty() && w.back() == -l) {
    w.pop_back();
  } else {
    w.push_back(l);
  }
}

bool is_reduced(std::span<const FreeLetter> w);
FreeWord free_reduce(std::span<const FreeLetter> w);
FreeWord free_multiply(std::span<const FreeLetter> a, std::span<const FreeLetter> b);
FreeWord free_inverse(std::span<const FreeLetter> w);
FreeWord free_power(std::span<const FreeLetter> w, std::int64_t k);

/// Shortlex comparison: length first, then letter_rank lexicographically.
bool shortlex_less(std::span<const FreeLetter> a, std::span<const FreeLetter> b);

/// A reduced word written as conjugator * core * conjugator^-1 with the core
/// cyclically reduced.
struct CyclicSplit {
  FreeWord conjugator;
  FreeWord core;
};
CyclicSplit cyclic_split(std::span<const FreeLetter> w);

/// Largest p with w = r^p; returns r. The identity is its own root.
struct RootDecomposition {
  FreeWord root;
  std::int64_t exponent = 1;
};
RootDecomposition primitive_root(std::span<const FreeLetter> w);

/// True when the reduced word is not a proper power.
bool is_root(std::span<const FreeLetter> w);

/// k with w = u^k, if any. Throws IdentityBase when u is trivial.
std::optional<std::int64_t> cyclic_membership(std::span<const FreeLetter> w,
                                              std::span<const FreeLetter> u);

/// Some g with g u g^-1 = v, if u and v are conjugate.
std::optional<FreeWord> find_conjugator(std::span<const FreeLetter> u,
                                        std::span<const FreeLetter> v);

/// Shortlex-least element of the left coset w<u> (u nontrivial).
FreeWord free_coset_rep(std::span<const FreeLetter> w, std::span<const FreeLetter> u);

}  // namespace gogbench
