#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gogbench/graph_of_groups.hpp"

namespace gogbench {

enum class Verdict { Pass, Fail, InconclusiveAtRadius };

std::string to_string(Verdict v);

struct ConditionResult {
  std::string name;
  Verdict verdict = Verdict::Pass;
  bool exact = true;
  std::string detail;
  std::vector<std::string> witnesses;  // nonempty whenever verdict == Fail
};

/// Lattice index of the two kernel intersections inside one edge group.
struct KernelIndex {
  EdgeId edge = 0;
  std::optional<std::uint64_t> index;  // nullopt: infinite
};

struct AdmissibilityReport {
  int radius = 0;
  std::array<ConditionResult, 4> conditions;
  std::vector<KernelIndex> kernel_indices;
  /// Number of (g, e, e') triples swept over the radius ball for condition (3).
  std::uint64_t sampled_triples = 0;

  bool all_pass() const;
};

/// Decides conditions (1)-(4) of admissibility. Condition (3) is decided
/// exactly through root conjugacy in the free factor and cross-checked on
/// every g in the radius ball of each vertex group. Throws ValidationFailed
/// if `g` does not validate.
AdmissibilityReport check_admissibility(const GraphOfGroups& g, int radius, const Budget& budget = {});

}  // namespace gogbench
