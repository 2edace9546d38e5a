#include "eedp/dag.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_set>

#include "eedp/graph_io.hpp"

namespace eedp {

namespace {

std::uint64_t arc_key(Arc a) { return (std::uint64_t{a.head} << 32) | a.tail; }

class DagBuilder {
 public:
  explicit DagBuilder(const Graph& g)
      : g_(g),
        visited_heads_(g.node_count(), 0),
        future_heads_(g.node_count(), 0),
        seeded_(g.node_count(), 0),
        touched_(g.node_count(), 0),
        kept_out_(g.node_count()),
        mark_(g.node_count(), 0) {}

  Dag run(NodeId start) {
    traverse_from(start);
    for (NodeId v = 0; v < g_.node_count(); ++v) {
      const bool isolated = g_.out_degree(v) == 0 && g_.in_degree(v) == 0;
      if (!seeded_[v] && !touched_[v] && !isolated) traverse_from(v);
    }
    return Dag(Graph::from_arcs(g_.node_count(), kept_, false), g_.fingerprint(),
               guard_skips_);
  }

 private:
  bool kept(Arc a) const { return kept_set_.contains(arc_key(a)); }

  void traverse_from(NodeId node) {
    seeded_[node] = 1;
    std::deque<Arc> queue;
    for (NodeId tail : g_.successors(node)) queue.push_back({node, tail});
    future_heads_[node] = 1;

    while (!queue.empty()) {
      const Arc current = queue.front();
      queue.pop_front();
      const NodeId head = current.head;
      const NodeId tail = current.tail;
      if (visited_heads_[tail] && future_heads_[tail]) continue;

      if (!kept(current.reversed())) {
        if (closes_cycle(current)) {
          ++guard_skips_;
        } else {
          keep(current);
          visited_heads_[head] = 1;
        }
      }

      bool queued = false;
      for (NodeId next : g_.successors(tail)) {
        const Arc candidate{tail, next};
        if (!kept(candidate) && !kept(candidate.reversed())) {
          queue.push_back(candidate);
          queued = true;
        }
      }
      if (queued) future_heads_[tail] = 1;
    }
  }

  void keep(Arc a) {
    if (!kept_set_.insert(arc_key(a)).second) return;
    kept_.push_back(a);
    kept_out_[a.head].push_back(a.tail);
    touched_[a.head] = 1;
    touched_[a.tail] = 1;
  }

  // Adding head -> tail closes a cycle iff tail already reaches head.
  bool closes_cycle(Arc a) {
    ++epoch_;
    std::vector<NodeId>& stack = scratch_;
    stack.assign(1, a.tail);
    mark_[a.tail] = epoch_;
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      if (v == a.head) return true;
      for (NodeId w : kept_out_[v]) {
        if (mark_[w] != epoch_) {
          mark_[w] = epoch_;
          stack.push_back(w);
        }
      }
    }
    return false;
  }

  const Graph& g_;
  std::vector<char> visited_heads_;
  std::vector<char> future_heads_;
  std::vector<char> seeded_;
  std::vector<char> touched_;
  std::vector<Arc> kept_;
  std::unordered_set<std::uint64_t> kept_set_;
  std::vector<std::vector<NodeId>> kept_out_;
  std::vector<std::uint32_t> mark_;
  std::uint32_t epoch_ = 0;
  std::vector<NodeId> scratch_;
  std::size_t guard_skips_ = 0;
};

}  // namespace

Dag build_eedp_dag(const Graph& g, NodeId start) {
  if (g.empty()) throw std::invalid_argument("cannot build a DAG from an empty graph");
  g.check_node(start);
  return DagBuilder(g).run(start);
}

bool is_acyclic(std::size_t node_count, std::span<const Arc> arcs) {
  std::vector<std::size_t> indegree(node_count, 0);
  std::vector<std::vector<NodeId>> out(node_count);
  for (const Arc& a : arcs) {
    if (a.head >= node_count || a.tail >= node_count) {
      throw std::out_of_range("arc endpoint outside node range");
    }
    out[a.head].push_back(a.tail);
    ++indegree[a.tail];
  }
  std::vector<NodeId> ready;
  for (NodeId v = 0; v < node_count; ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::size_t consumed = 0;
  while (!ready.empty()) {
    const NodeId v = ready.back();
    ready.pop_back();
    ++consumed;
    for (NodeId w : out[v]) {
      if (--indegree[w] == 0) ready.push_back(w);
    }
  }
  return consumed == node_count;
}

bool EndpointSet::contains(NodeId v) const {
  return std::binary_search(endpoints.begin(), endpoints.end(), v);
}

EndpointSet endpoints(const Dag& d) {
  EndpointSet set;
  const Graph& g = d.graph();
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const bool source = g.in_degree(v) == 0;
    const bool sink = g.out_degree(v) == 0;
    if (source) set.sources.push_back(v);
    if (sink) set.sinks.push_back(v);
    if (source || sink) set.endpoints.push_back(v);
  }
  return set;
}

nlohmann::json dag_to_json(const Dag& d) {
  nlohmann::json doc = graph_to_json(d.graph());
  doc["guard_skips"] = d.guard_skips();
  return doc;
}

}  // namespace eedp
