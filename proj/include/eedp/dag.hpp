#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "eedp/graph.hpp"

namespace eedp {

/// Acyclic orientation of a source graph: same node set, a subset of its
/// arcs, never both (u, v) and (v, u).
class Dag {
 public:
  Dag() = default;
  Dag(Graph arcs, std::uint64_t source_fingerprint, std::size_t guard_skips)
      : graph_(std::move(arcs)),
        source_fingerprint_(source_fingerprint),
        guard_skips_(guard_skips) {}

  const Graph& graph() const noexcept { return graph_; }
  std::size_t node_count() const noexcept { return graph_.node_count(); }
  std::span<const Arc> arcs() const noexcept { return graph_.arcs(); }
  bool has_arc(NodeId head, NodeId tail) const { return graph_.has_arc(head, tail); }

  /// Fingerprint of the graph this Dag was built from.
  std::uint64_t source_fingerprint() const noexcept { return source_fingerprint_; }
  /// Arcs rejected because they would have closed a directed cycle.
  std::size_t guard_skips() const noexcept { return guard_skips_; }

 private:
  Graph graph_;
  std::uint64_t source_fingerprint_ = 0;
  std::size_t guard_skips_ = 0;
};

/// Breadth-first arc selection producing an acyclic orientation of `g`.
///
/// Arcs are pulled from a FIFO queue seeded with the out-arcs of `start`.
/// An arc is dropped when its tail has already been used as a head and has
/// had its own out-arcs queued; otherwise it is kept unless its reverse is
/// already kept or it would close a cycle. After each kept-or-not decision
/// the tail's out-arcs that are neither kept nor reverse-kept are queued.
/// When the queue drains, traversal resumes from the lowest node that has
/// not been seeded and touches no kept arc, until every non-isolated node is
/// covered. Arc enumeration is in ascending (head, tail) order throughout.
///
/// Throws std::invalid_argument on an empty graph, std::out_of_range on a
/// bad start id.
Dag build_eedp_dag(const Graph& g, NodeId start = 0);

/// Kahn's algorithm over an arbitrary arc list.
bool is_acyclic(std::size_t node_count, std::span<const Arc> arcs);
inline bool is_acyclic(const Dag& d) { return is_acyclic(d.node_count(), d.arcs()); }

/// Nodes with zero in-degree (sources) or zero out-degree (sinks) in a Dag.
/// Isolated nodes are both. All vectors are ascending.
struct EndpointSet {
  std::vector<NodeId> sources;
  std::vector<NodeId> sinks;
  std::vector<NodeId> endpoints;

  bool contains(NodeId v) const;
};

EndpointSet endpoints(const Dag& d);

/// Graph JSON plus a "guard_skips" diagnostic.
nlohmann::json dag_to_json(const Dag& d);

}  // namespace eedp
