#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eedp/graph.hpp"

// Minimal readers for the lossless text formats produced by flatten.hpp.
// Each returns the arc set it recovers (sorted, unique) and the node count
// when the format states it. Malformed text throws std::invalid_argument.
namespace eedp {

struct ParsedGraph {
  std::optional<std::size_t> node_count;
  std::vector<Arc> arcs;
};

ParsedGraph parse_adjacency_list(std::string_view text);
ParsedGraph parse_adjacency_matrix(std::string_view text);
ParsedGraph parse_edge_list(std::string_view text);
ParsedGraph parse_ego_graph(std::string_view text);
ParsedGraph parse_gml(std::string_view text);
ParsedGraph parse_graphml(std::string_view text);
ParsedGraph parse_natural_language(std::string_view text);

/// Checks emitted GraphML against the structural rules of the GraphML 1.0
/// schema for the element subset this project writes: XML declaration,
/// <graphml> root in the GraphML namespace, <graph> with a valid edgedefault,
/// unique node ids, edges referencing declared nodes, balanced tags and no
/// unexpected elements or attributes. Returns the violations found.
std::vector<std::string> graphml_schema_violations(std::string_view text);

}  // namespace eedp
