#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "gogbench/rational.hpp"
#include "gogbench/tree_space.hpp"

namespace gogbench {

enum class IntrinsicMetric {
  Ambient,     // ball distance itself
  EdgeL1,      // l1 in edge coordinates, scaled by basis word lengths
  VertexWord,  // word metric of the vertex group
};

struct DistortionRow {
  int d_intrinsic = 0;
  int d_ambient = 0;
  std::uint64_t count = 0;
};

struct DistortionProfile {
  std::vector<DistortionRow> table;  // sorted by (d_intrinsic, d_ambient)
  Fraction K{1};
  Fraction A{0};
  std::optional<Fraction> max_ratio;  // over pairs with d_ambient >= 1
  std::uint64_t pairs = 0;            // pairs examined
  std::uint64_t certified = 0;        // pairs entering the table
  bool sampled = false;
};

inline constexpr std::size_t kExhaustiveLimit = 2000;
inline constexpr std::size_t kSampledPairs = 100000;

/// d_intrinsic against d_ambient over pairs of `s` whose ball distance is
/// certified. All pairs when |s| <= kExhaustiveLimit, otherwise kSampledPairs
/// pairs drawn with `seed` (MissingSeed if absent). K is the largest ratio
/// over pairs with d_ambient >= 3 (1 when there are none), then A is the
/// least value with d_intrinsic <= K d_ambient + A on every pair.
DistortionProfile distortion_profile(const BallGraph& ball, const SubspaceSelection& s, IntrinsicMetric metric,
                                     std::optional<std::uint64_t> seed = std::nullopt);

/// The intrinsic distance between two ball points of one selection.
int intrinsic_distance(const BallGraph& ball, const SubspaceSelection& s, IntrinsicMetric metric, std::size_t a,
                       std::size_t b);

}  // namespace gogbench
