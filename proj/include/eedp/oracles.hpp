#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "eedp/graph.hpp"

namespace eedp {

using Path = std::vector<NodeId>;

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

/// True iff a directed path source -> target exists. reachable(g, v, v) is
/// true (the empty path).
bool reachable(const Graph& g, NodeId source, NodeId target);

/// BFS hop count, or nullopt when unreachable. With respect_direction=false
/// arcs are traversed both ways.
std::optional<std::size_t> shortest_distance(const Graph& g, NodeId source,
                                             NodeId target,
                                             bool respect_direction = true);

/// Single-source BFS distances; kUnreachable marks unreachable nodes.
std::vector<std::size_t> bfs_distances(const Graph& g, NodeId source,
                                       bool respect_direction = true);

struct SimplePathLimits {
  /// Maximum arcs per path. 0 means node_count - 1, i.e. no truncation.
  std::size_t max_len = 0;
  std::size_t max_count = 1'000'000;
};

struct PathSet {
  std::vector<Path> paths;
  /// Set when enumeration stopped at max_count.
  bool overflow = false;
};

/// All simple directed paths source -> target in DFS order with successors
/// visited in ascending id. source == target yields the single path [source].
/// Throws std::invalid_argument when a limit is zero.
PathSet all_simple_paths(const Graph& g, NodeId source, NodeId target,
                         SimplePathLimits limits = {});

/// True iff a simple directed path with exactly `k` arcs joins source to
/// target. Requires k >= 1.
bool simple_path_of_length_exists(const Graph& g, NodeId source, NodeId target,
                                  std::size_t k);

}  // namespace eedp
