#pragma once

#include <string_view>

// Fixed text used by the flatteners and by the readers that parse their
// output back. Changing a template here changes both sides.
namespace eedp::templates {

inline constexpr std::string_view kPathsHeader = "Main paths:";
inline constexpr std::string_view kAdjListHeader = "Adjacency list:";
inline constexpr std::string_view kNoPaths = "(none)";
inline constexpr std::string_view kArrow = " -> ";

inline constexpr std::string_view kMatrixNodesPrefix = "Nodes: ";
inline constexpr std::string_view kMatrixNoNodes = "none";

inline constexpr std::string_view kEgoPrefix = "node ";

inline constexpr std::string_view kNaturalPrefix = "There is a directed edge from node ";
inline constexpr std::string_view kNaturalMiddle = " to node ";
inline constexpr std::string_view kNaturalSuffix = ".";
inline constexpr std::string_view kNaturalEmpty = "The graph has no edges.";

inline constexpr std::string_view kGraphMlNamespace = "http://graphml.graphdrawing.org/xmlns";
inline constexpr std::string_view kGraphMlSchemaLocation =
    "http://graphml.graphdrawing.org/xmlns "
    "http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd";

}  // namespace eedp::templates
