#include "eedp/graph.hpp"

#include <algorithm>

#include <fmt/core.h>

namespace eedp {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

void fnv_mix(std::uint64_t& h, std::uint64_t value) {
  for (int i = 0; i < 8; ++i) {
    h ^= (value >> (8 * i)) & 0xffU;
    h *= kFnvPrime;
  }
}

}  // namespace

Graph Graph::from_arcs(std::size_t node_count, std::span<const Arc> arcs,
                       bool undirected) {
  Graph g;
  g.node_count_ = node_count;
  g.undirected_ = undirected;
  g.arcs_.reserve(undirected ? arcs.size() * 2 : arcs.size());
  for (const Arc& a : arcs) {
    if (a.head >= node_count || a.tail >= node_count) {
      throw GraphError(fmt::format("arc ({}, {}) references a node outside [0, {})",
                                   a.head, a.tail, node_count),
                       a);
    }
    if (a.head == a.tail) {
      throw GraphError(fmt::format("self-loop on node {}", a.head), a);
    }
    g.arcs_.push_back(a);
    if (undirected) g.arcs_.push_back(a.reversed());
  }
  std::sort(g.arcs_.begin(), g.arcs_.end());
  g.arcs_.erase(std::unique(g.arcs_.begin(), g.arcs_.end()), g.arcs_.end());

  g.out_offsets_.assign(node_count + 1, 0);
  g.in_offsets_.assign(node_count + 1, 0);
  for (const Arc& a : g.arcs_) {
    ++g.out_offsets_[a.head + 1];
    ++g.in_offsets_[a.tail + 1];
  }
  for (std::size_t v = 0; v < node_count; ++v) {
    g.out_offsets_[v + 1] += g.out_offsets_[v];
    g.in_offsets_[v + 1] += g.in_offsets_[v];
  }
  g.out_targets_.resize(g.arcs_.size());
  g.in_sources_.resize(g.arcs_.size());
  std::vector<std::size_t> in_fill(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
  for (std::size_t i = 0; i < g.arcs_.size(); ++i) {
    const Arc& a = g.arcs_[i];
    g.out_targets_[i] = a.tail;
    // Arcs are sorted by head, so in-lists fill in ascending source order.
    g.in_sources_[in_fill[a.tail]++] = a.head;
  }

  std::uint64_t h = kFnvOffset;
  fnv_mix(h, node_count);
  fnv_mix(h, undirected ? 1 : 0);
  for (const Arc& a : g.arcs_) {
    fnv_mix(h, (std::uint64_t{a.head} << 32) | a.tail);
  }
  g.fingerprint_ = h;
  return g;
}

std::span<const NodeId> Graph::successors(NodeId u) const {
  check_node(u);
  return std::span<const NodeId>(out_targets_)
      .subspan(out_offsets_[u], out_offsets_[u + 1] - out_offsets_[u]);
}

std::span<const NodeId> Graph::predecessors(NodeId v) const {
  check_node(v);
  return std::span<const NodeId>(in_sources_)
      .subspan(in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]);
}

bool Graph::has_arc(NodeId head, NodeId tail) const {
  if (!contains(head) || !contains(tail)) return false;
  auto succ = successors(head);
  return std::binary_search(succ.begin(), succ.end(), tail);
}

void Graph::check_node(NodeId v) const {
  if (v >= node_count_) {
    throw std::out_of_range(
        fmt::format("node {} is not in a graph of {} nodes", v, node_count_));
  }
}

void Graph::set_labels(std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != node_count_) {
    throw std::invalid_argument(fmt::format(
        "label count {} does not match node count {}", labels.size(), node_count_));
  }
  labels_ = std::move(labels);
}

}  // namespace eedp
