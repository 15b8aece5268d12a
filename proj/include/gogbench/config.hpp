#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gogbench/graph_of_groups.hpp"

namespace gogbench {

/// Key/value fields of one `[experiment <name>]` section.
using ExperimentFields = std::map<std::string, std::string>;

struct WorkbenchConfig {
  std::string origin;  // file name or "<text>"
  std::uint64_t hash = 0;
  std::string name;
  std::vector<VertexGroup> vertices;
  std::vector<OrientedEdge> edges;
  std::optional<std::vector<EdgeId>> tree;
  std::map<std::string, ExperimentFields> experiments;

  GraphOfGroups graph() const { return GraphOfGroups(vertices, edges, tree); }
  /// Field of an experiment section, if present.
  std::optional<std::string> field(const std::string& experiment, const std::string& key) const;
};

/// Parses either the sectioned text format or its JSON variant (detected by a
/// leading '{'). Throws ParseError for syntax, SchemaError for missing or
/// inconsistent fields, ValidationFailed if the graph of groups does not
/// validate.
WorkbenchConfig parse_config_text(std::string_view text, std::string origin = "<text>");
WorkbenchConfig parse_config(const std::filesystem::path& path);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

/// Writes through a sibling temporary file and renames it into place.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace gogbench
