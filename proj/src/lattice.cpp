#include "gogbench/lattice.hpp"

#include <cstdlib>
#include <numeric>

namespace gogbench {

std::optional<IntVec2> solve_integer(const IntMat2& m, const IntVec2& v) {
  const std::int64_t d = m.det();
  if (d == 0) return std::nullopt;
  // Cramer's rule.
  const std::int64_t n0 = v[0] * m.col1[1] - m.col1[0] * v[1];
  const std::int64_t n1 = m.col0[0] * v[1] - v[0] * m.col0[1];
  if (n0 % d != 0 || n1 % d != 0) return std::nullopt;
  return IntVec2{n0 / d, n1 / d};
}

std::optional<std::uint64_t> lattice_index(std::span<const IntVec2> vs) {
  std::uint64_t g = 0;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      const std::int64_t minor = vs[i][0] * vs[j][1] - vs[j][0] * vs[i][1];
      g = std::gcd(g, static_cast<std::uint64_t>(std::llabs(minor)));
    }
  }
  if (g == 0) return std::nullopt;
  return g;
}

}  // namespace gogbench
