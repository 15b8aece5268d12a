#pragma once

#include <string>

#include "gogbench/config.hpp"

// Small graphs of groups shared by the unit tests. The torus complex and the
// double are also shipped under configs/.
namespace fixtures {

inline const char* kTorus3 = R"(
[graph]
name = torus-complex-3
[vertex 1]
kind = product
free = a1 b2
center = z1
[vertex 2]
kind = product
free = a2 b3
center = z2
[edge 1]
source = 1
target = 2
reverse = 2
forward = true
basis = z1, b2
image = a2, z2
[edge 2]
source = 2
target = 1
reverse = 1
basis = a2, z2
image = z1, b2
)";

inline const char* kDouble = R"(
[vertex 0]
kind = product
free = x y
center = z
[vertex 1]
kind = product
free = x y
center = z
[edge 0]
source = 0
target = 1
reverse = 1
forward = true
basis = x, z
image = x, z
[edge 1]
source = 1
target = 0
reverse = 0
basis = x, z
image = x, z
)";

inline const char* kHnn = R"(
[vertex 0]
kind = product
free = x y
center = z
[edge 1]
source = 0
target = 0
reverse = 2
forward = true
basis = x, z
image = y, z
[edge 2]
source = 0
target = 0
reverse = 1
basis = y, z
image = x, z
)";

// Three vertices in a path plus a loop at the middle: mixes tree edges and
// stable letters, and edge roots longer than one letter.
inline const char* kMixed = R"(
[vertex 0]
kind = product
free = x y
center = z
[vertex 1]
kind = product
free = p q r
center = c
[vertex 2]
kind = product
free = s t
center = w
[edge 0]
source = 0
target = 1
reverse = 1
forward = true
basis = x y, z
image = c, p q
[edge 1]
source = 1
target = 0
reverse = 0
basis = c, p q
image = x y, z
[edge 2]
source = 1
target = 2
reverse = 3
forward = true
basis = r, c
image = w, s
[edge 3]
source = 2
target = 1
reverse = 2
basis = w, s
image = r, c
[edge 4]
source = 1
target = 1
reverse = 5
forward = true
basis = q r^-1, c
image = p^-1 q q, c^-1
[edge 5]
source = 1
target = 1
reverse = 4
basis = p^-1 q q, c^-1
image = q r^-1, c
)";

inline gogbench::WorkbenchConfig load(const char* text) { return gogbench::parse_config_text(text, "fixture"); }

inline std::string torus5_path() { return std::string(GOGBENCH_SOURCE_DIR) + "/configs/torus-complex-5.cfg"; }
inline std::string config_path(const std::string& name) {
  return std::string(GOGBENCH_SOURCE_DIR) + "/configs/" + name;
}

}  // namespace fixtures
