#include "eedp/paths.hpp"

#include <algorithm>
#include <stdexcept>

namespace eedp {

std::size_t PathBundle::path_count() const {
  std::size_t total = 0;
  for (const auto& group : groups) total += group.paths.size();
  return total;
}

PathBundle extract_paths(const Graph& g, const EndpointSet& ends, ExtractLimits limits) {
  PathBundle bundle;
  bundle.source_fingerprint = g.fingerprint();
  std::size_t total = 0;
  for (NodeId a : ends.endpoints) {
    g.check_node(a);
    for (NodeId b : ends.endpoints) {
      if (a == b) continue;
      if (total >= limits.max_total) {
        // Global cap reached: flag overflow only if paths are actually lost.
        if (!all_simple_paths(g, a, b, {limits.max_len, 1}).paths.empty()) {
          bundle.overflow = true;
          return bundle;
        }
        continue;
      }
      const std::size_t budget = std::min(limits.max_per_pair, limits.max_total - total);
      PathSet found = all_simple_paths(g, a, b, {limits.max_len, budget});
      // A global-cap truncation also counts as overflow.
      bundle.overflow = bundle.overflow || found.overflow;
      if (found.paths.empty()) continue;
      total += found.paths.size();
      bundle.groups.push_back({a, b, std::move(found.paths)});
    }
  }
  return bundle;
}

DagPathMask classify_dag_paths(const PathBundle& bundle, const Dag& d) {
  if (bundle.source_fingerprint != d.source_fingerprint()) {
    throw std::invalid_argument("path bundle and DAG derive from different graphs");
  }
  DagPathMask mask;
  mask.in_dag.reserve(bundle.path_count());
  for (const auto& group : bundle.groups) {
    for (const Path& p : group.paths) {
      bool all = true;
      for (std::size_t i = 0; i + 1 < p.size() && all; ++i) {
        all = d.has_arc(p[i], p[i + 1]);
      }
      mask.in_dag.push_back(all);
    }
  }
  return mask;
}

nlohmann::json bundle_to_json(const PathBundle& bundle) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& group : bundle.groups) {
    pairs.push_back({{"start", group.start}, {"end", group.end}, {"paths", group.paths}});
  }
  return {{"pairs", pairs}, {"overflow", bundle.overflow}};
}

}  // namespace eedp
