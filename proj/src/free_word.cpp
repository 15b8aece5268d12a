#include "gogbench/free_word.hpp"

#include <algorithm>

#include "gogbench/errors.hpp"

namespace gogbench {

bool is_reduced(std::span<const FreeLetter> w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i] == -w[i - 1]) return false;
  }
  return true;
}

FreeWord free_reduce(std::span<const FreeLetter> w) {
  FreeWord out;
  out.reserve(w.size());
  for (FreeLetter l : w) push_reduced(out, l);
  return out;
}

FreeWord free_multiply(std::span<const FreeLetter> a, std::span<const FreeLetter> b) {
  std::size_t cancel = 0;
  while (cancel < a.size() && cancel < b.size() && a[a.size() - 1 - cancel] == -b[cancel]) {
    ++cancel;
  }
  FreeWord out;
  out.reserve(a.size() + b.size() - 2 * cancel);
  out.insert(out.end(), a.begin(), a.end() - static_cast<std::ptrdiff_t>(cancel));
  out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(cancel), b.end());
  return out;
}

FreeWord free_inverse(std::span<const FreeLetter> w) {
  FreeWord out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = static_cast<FreeLetter>(-w[w.size() - 1 - i]);
  return out;
}

FreeWord free_power(std::span<const FreeLetter> w, std::int64_t k) {
  if (k == 0 || w.empty()) return {};
  FreeWord base = k > 0 ? FreeWord(w.begin(), w.end()) : free_inverse(w);
  const std::uint64_t n = k > 0 ? static_cast<std::uint64_t>(k) : static_cast<std::uint64_t>(-k);
  CyclicSplit split = cyclic_split(base);
  // conjugator * core^n * conjugator^-1 is already reduced.
  FreeWord out = split.conjugator;
  out.reserve(2 * split.conjugator.size() + n * split.core.size());
  for (std::uint64_t i = 0; i < n; ++i) out.insert(out.end(), split.core.begin(), split.core.end());
  for (auto it = split.conjugator.rbegin(); it != split.conjugator.rend(); ++it) {
    out.push_back(static_cast<FreeLetter>(-*it));
  }
  return out;
}

bool shortlex_less(std::span<const FreeLetter> a, std::span<const FreeLetter> b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return letter_rank(a[i]) < letter_rank(b[i]);
  }
  return false;
}

CyclicSplit cyclic_split(std::span<const FreeLetter> w) {
  std::size_t lo = 0;
  std::size_t hi = w.size();
  while (hi - lo >= 2 && w[lo] == -w[hi - 1]) {
    ++lo;
    --hi;
  }
  return {FreeWord(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(lo)),
          FreeWord(w.begin() + static_cast<std::ptrdiff_t>(lo), w.begin() + static_cast<std::ptrdiff_t>(hi))};
}

namespace {

// Smallest period p dividing |c| with c = (c[0..p))^(|c|/p).
std::size_t smallest_period(std::span<const FreeLetter> c) {
  const std::size_t n = c.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = c[i] == c[i - p];
    if (ok) return p;
  }
  return n;
}

}  // namespace

RootDecomposition primitive_root(std::span<const FreeLetter> w) {
  if (w.empty()) return {{}, 1};
  CyclicSplit split = cyclic_split(w);
  const std::size_t p = smallest_period(split.core);
  FreeWord root = split.conjugator;
  root.insert(root.end(), split.core.begin(), split.core.begin() + static_cast<std::ptrdiff_t>(p));
  for (auto it = split.conjugator.rbegin(); it != split.conjugator.rend(); ++it) {
    root.push_back(static_cast<FreeLetter>(-*it));
  }
  return {std::move(root), static_cast<std::int64_t>(split.core.size() / p)};
}

bool is_root(std::span<const FreeLetter> w) { return !w.empty() && primitive_root(w).exponent == 1; }

std::optional<std::int64_t> cyclic_membership(std::span<const FreeLetter> w,
                                              std::span<const FreeLetter> u) {
  if (u.empty()) throw IdentityBase("cyclic membership against the trivial word");
  if (w.empty()) return 0;
  RootDecomposition ru = primitive_root(u);
  CyclicSplit split = cyclic_split(ru.root);
  const auto& a = split.conjugator;
  const auto& c = split.core;
  if (w.size() < 2 * a.size() + c.size()) return std::nullopt;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (w[i] != a[i] || w[w.size() - 1 - i] != -a[i]) return std::nullopt;
  }
  const std::size_t middle = w.size() - 2 * a.size();
  if (middle % c.size() != 0) return std::nullopt;
  const auto q = static_cast<std::int64_t>(middle / c.size());
  auto matches = [&](std::span<const FreeLetter> core) {
    for (std::size_t i = 0; i < middle; ++i) {
      if (w[a.size() + i] != core[i % core.size()]) return false;
    }
    return true;
  };
  std::int64_t signed_q = 0;
  if (matches(c)) {
    signed_q = q;
  } else if (matches(free_inverse(c))) {
    signed_q = -q;
  } else {
    return std::nullopt;
  }
  if (signed_q % ru.exponent != 0) return std::nullopt;
  return signed_q / ru.exponent;
}

std::optional<FreeWord> find_conjugator(std::span<const FreeLetter> u,
                                        std::span<const FreeLetter> v) {
  CyclicSplit su = cyclic_split(u);
  CyclicSplit sv = cyclic_split(v);
  if (su.core.size() != sv.core.size()) return std::nullopt;
  if (su.core.empty()) return FreeWord{};
  const std::size_t n = su.core.size();
  for (std::size_t s = 0; s < n; ++s) {
    // core_v == rotate(core_u, s) == p^-1 core_u p with p = core_u[0..s)
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) ok = sv.core[i] == su.core[(i + s) % n];
    if (!ok) continue;
    // v = b q b^-1 with q = p^-1 c p and u = a c a^-1, so g = b p^-1 a^-1.
    FreeWord p(su.core.begin(), su.core.begin() + static_cast<std::ptrdiff_t>(s));
    FreeWord g = free_multiply(free_multiply(sv.conjugator, free_inverse(p)), free_inverse(su.conjugator));
    return g;
  }
  return std::nullopt;
}

FreeWord free_coset_rep(std::span<const FreeLetter> w, std::span<const FreeLetter> u) {
  if (u.empty()) throw IdentityBase("coset of the trivial subgroup");
  // |w u^k| >= |k| - |w| - |u| once cancellation is exhausted, so minima live
  // in a window of this size around k = 0.
  const auto bound = static_cast<std::int64_t>(2 * w.size() + u.size() + 2);
  FreeWord best(w.begin(), w.end());
  FreeWord up = FreeWord(w.begin(), w.end());
  FreeWord down = up;
  const FreeWord uinv = free_inverse(u);
  for (std::int64_t k = 1; k <= bound; ++k) {
    up = free_multiply(up, u);
    down = free_multiply(down, uinv);
    if (shortlex_less(up, best)) best = up;
    if (shortlex_less(down, best)) best = down;
  }
  return best;
}

}  // namespace gogbench
