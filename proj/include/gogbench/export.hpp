#pragma once

#include <cstdint>
#include <string>

#include "gogbench/cusped.hpp"
#include "gogbench/distortion.hpp"
#include "gogbench/quotient.hpp"
#include "gogbench/tree_space.hpp"

namespace gogbench {

/// Header, vertex table and edge list of a tree-of-spaces ball.
std::string export_ball(const BallGraph& ball, std::uint64_t config_hash);
/// Edge list of a cusped graph with depth annotations.
std::string export_cusped(const CuspedGraph& c, const BackendSpec& b);

std::string distortion_csv(const DistortionProfile& p);
std::string dist_projs_csv(const DistProjsReport& r);
std::string proj_bound_csv(const ProjBoundReport& r);

}  // namespace gogbench
