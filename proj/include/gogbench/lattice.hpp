#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>

namespace gogbench {

using IntVec2 = std::array<std::int64_t, 2>;

/// Column-major 2x2 integer matrix: columns are images of the unit vectors.
struct IntMat2 {
  IntVec2 col0{1, 0};
  IntVec2 col1{0, 1};

  std::int64_t det() const { return col0[0] * col1[1] - col1[0] * col0[1]; }
  IntVec2 apply(const IntVec2& k) const {
    return {col0[0] * k[0] + col1[0] * k[1], col0[1] * k[0] + col1[1] * k[1]};
  }
};

/// Integer solution k of M k = v, if one exists (M nonsingular).
std::optional<IntVec2> solve_integer(const IntMat2& m, const IntVec2& v);

/// Index of the sublattice of Z^2 spanned by `vs`: the gcd of all 2x2 minors
/// when the span has rank 2, nullopt (infinite index) otherwise.
std::optional<std::uint64_t> lattice_index(std::span<const IntVec2> vs);

}  // namespace gogbench
