#include "eedp/oracles.hpp"

#include <deque>
#include <stdexcept>

namespace eedp {

namespace {

// Distance from every node to `target` following arc directions.
std::vector<std::size_t> distances_to(const Graph& g, NodeId target) {
  std::vector<std::size_t> dist(g.node_count(), kUnreachable);
  std::deque<NodeId> queue{target};
  dist[target] = 0;
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    for (NodeId u : g.predecessors(v)) {
      if (dist[u] == kUnreachable) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  return dist;
}

struct Frame {
  NodeId node;
  std::size_t next;  // index into successors(node)
};

}  // namespace

std::vector<std::size_t> bfs_distances(const Graph& g, NodeId source,
                                       bool respect_direction) {
  g.check_node(source);
  std::vector<std::size_t> dist(g.node_count(), kUnreachable);
  std::deque<NodeId> queue{source};
  dist[source] = 0;
  auto visit = [&](NodeId from, NodeId to) {
    if (dist[to] == kUnreachable) {
      dist[to] = dist[from] + 1;
      queue.push_back(to);
    }
  };
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    for (NodeId w : g.successors(v)) visit(v, w);
    if (!respect_direction) {
      for (NodeId w : g.predecessors(v)) visit(v, w);
    }
  }
  return dist;
}

bool reachable(const Graph& g, NodeId source, NodeId target) {
  g.check_node(target);
  return bfs_distances(g, source, true)[target] != kUnreachable;
}

std::optional<std::size_t> shortest_distance(const Graph& g, NodeId source,
                                             NodeId target, bool respect_direction) {
  g.check_node(target);
  const auto d = bfs_distances(g, source, respect_direction)[target];
  if (d == kUnreachable) return std::nullopt;
  return d;
}

PathSet all_simple_paths(const Graph& g, NodeId source, NodeId target,
                         SimplePathLimits limits) {
  g.check_node(source);
  g.check_node(target);
  if (limits.max_count == 0) throw std::invalid_argument("max_count must be >= 1");
  const std::size_t max_len =
      limits.max_len == 0 ? (g.node_count() > 0 ? g.node_count() - 1 : 0) : limits.max_len;

  PathSet result;
  if (source == target) {
    result.paths.push_back({source});
    return result;
  }
  const auto to_target = distances_to(g, target);
  if (to_target[source] == kUnreachable || to_target[source] > max_len) return result;

  std::vector<char> on_path(g.node_count(), 0);
  Path path{source};
  on_path[source] = 1;
  std::vector<Frame> stack{{source, 0}};
  while (!stack.empty()) {
    Frame& top = stack.back();
    const auto succ = g.successors(top.node);
    if (top.next == succ.size()) {
      on_path[top.node] = 0;
      path.pop_back();
      stack.pop_back();
      continue;
    }
    const NodeId w = succ[top.next++];
    if (on_path[w] || to_target[w] == kUnreachable) continue;
    // path.size() arcs once w is appended.
    if (path.size() + to_target[w] > max_len) continue;
    if (w == target) {
      if (result.paths.size() == limits.max_count) {
        result.overflow = true;
        return result;
      }
      result.paths.push_back(path);
      result.paths.back().push_back(w);
      continue;
    }
    on_path[w] = 1;
    path.push_back(w);
    stack.push_back({w, 0});
  }
  return result;
}

bool simple_path_of_length_exists(const Graph& g, NodeId source, NodeId target,
                                  std::size_t k) {
  g.check_node(source);
  g.check_node(target);
  if (k == 0) throw std::invalid_argument("path length must be >= 1");
  if (source == target || k >= g.node_count()) return false;
  const auto to_target = distances_to(g, target);
  if (to_target[source] == kUnreachable || to_target[source] > k) return false;

  std::vector<char> on_path(g.node_count(), 0);
  on_path[source] = 1;
  std::vector<Frame> stack{{source, 0}};
  while (!stack.empty()) {
    Frame& top = stack.back();
    const auto succ = g.successors(top.node);
    // Arcs used so far equals stack.size() - 1.
    const std::size_t depth = stack.size() - 1;
    if (top.next == succ.size()) {
      on_path[top.node] = 0;
      stack.pop_back();
      continue;
    }
    const NodeId w = succ[top.next++];
    if (on_path[w] || to_target[w] == kUnreachable) continue;
    const std::size_t used = depth + 1;
    if (w == target) {
      if (used == k) return true;
      continue;
    }
    if (used + to_target[w] > k) continue;
    on_path[w] = 1;
    stack.push_back({w, 0});
  }
  return false;
}

}  // namespace eedp
