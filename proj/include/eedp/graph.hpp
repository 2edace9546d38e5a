#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace eedp {

/// Dense node identifier in [0, node_count).
using NodeId = std::uint32_t;

/// A directed arc. `head` is the arc's origin and `tail` its destination,
/// so `head -> tail`.
struct Arc {
  NodeId head = 0;
  NodeId tail = 0;

  constexpr Arc reversed() const noexcept { return {tail, head}; }
  friend constexpr auto operator<=>(const Arc&, const Arc&) = default;
};

/// Thrown when graph input violates the structural contract (self-loop,
/// out-of-range id). The offending arc is carried for diagnostics.
class GraphError : public std::invalid_argument {
 public:
  GraphError(const std::string& what, Arc arc)
      : std::invalid_argument(what), arc_(arc) {}
  Arc arc() const noexcept { return arc_; }

 private:
  Arc arc_;
};

/// Simple directed graph over dense ids. Arcs are unique, loop-free and kept
/// in ascending (head, tail) order. Graphs loaded from undirected sources
/// store every edge as two opposing arcs and set `undirected_origin()`.
///
/// Immutable after construction.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an arc list. Duplicates are merged; with
  /// `undirected` every arc is closed under reversal.
  /// Throws GraphError on self-loops or ids >= node_count.
  static Graph from_arcs(std::size_t node_count, std::span<const Arc> arcs,
                         bool undirected);

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t arc_count() const noexcept { return arcs_.size(); }
  /// Undirected edge count for undirected-origin graphs, arc count otherwise.
  std::size_t edge_count() const noexcept {
    return undirected_ ? arcs_.size() / 2 : arcs_.size();
  }
  bool undirected_origin() const noexcept { return undirected_; }
  bool empty() const noexcept { return node_count_ == 0; }

  std::span<const Arc> arcs() const noexcept { return arcs_; }
  /// Out-neighbours of `u` in ascending order.
  std::span<const NodeId> successors(NodeId u) const;
  /// In-neighbours of `v` in ascending order.
  std::span<const NodeId> predecessors(NodeId v) const;

  std::size_t out_degree(NodeId u) const { return successors(u).size(); }
  std::size_t in_degree(NodeId v) const { return predecessors(v).size(); }
  bool has_arc(NodeId head, NodeId tail) const;
  bool contains(NodeId v) const noexcept { return v < node_count_; }

  /// Throws std::out_of_range if `v` is not a node of this graph.
  void check_node(NodeId v) const;

  /// Stable 64-bit content hash of (node_count, undirected flag, arcs). Used
  /// to tie derived objects back to their source graph.
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

  /// Original dataset labels (e.g. global TU node numbers), one per node.
  /// Empty when the graph was built from already-dense ids.
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  void set_labels(std::vector<std::string> labels);

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.node_count_ == b.node_count_ && a.undirected_ == b.undirected_ &&
           a.arcs_ == b.arcs_;
  }

 private:
  std::size_t node_count_ = 0;
  bool undirected_ = false;
  std::vector<Arc> arcs_;
  std::vector<std::size_t> out_offsets_{0};
  std::vector<NodeId> out_targets_;
  std::vector<std::size_t> in_offsets_{0};
  std::vector<NodeId> in_sources_;
  std::uint64_t fingerprint_ = 0;
  std::vector<std::string> labels_;
};

}  // namespace eedp
