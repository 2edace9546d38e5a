#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <json.hpp>

#include "eedp/dag.hpp"
#include "eedp/graph.hpp"
#include "eedp/oracles.hpp"

namespace eedp {

struct ExtractLimits {
  /// Maximum arcs per path; 0 means node_count - 1.
  std::size_t max_len = 0;
  std::size_t max_per_pair = 10'000;
  std::size_t max_total = 100'000;
};

/// All extracted paths between one ordered endpoint pair.
struct PathGroup {
  NodeId start = 0;
  NodeId end = 0;
  std::vector<Path> paths;
};

/// End-to-end paths of the original graph grouped by ordered endpoint pair.
/// Groups are ordered by (start, end); empty groups are omitted.
struct PathBundle {
  std::vector<PathGroup> groups;
  /// Set when any per-pair or global cap truncated enumeration.
  bool overflow = false;
  std::uint64_t source_fingerprint = 0;

  std::size_t path_count() const;
};

/// Enumerates simple paths of `g` (not of the Dag) between every ordered pair
/// of distinct endpoints.
PathBundle extract_paths(const Graph& g, const EndpointSet& ends,
                         ExtractLimits limits = {});

/// One flag per path in bundle order (groups flattened): true iff every arc
/// of the path is also a Dag arc.
struct DagPathMask {
  std::vector<bool> in_dag;

  std::size_t size() const noexcept { return in_dag.size(); }
  bool operator[](std::size_t i) const { return in_dag[i]; }
};

/// Throws std::invalid_argument when bundle and Dag come from different
/// graphs.
DagPathMask classify_dag_paths(const PathBundle& bundle, const Dag& d);

/// {"pairs": [{"start": a, "end": b, "paths": [[...], ...]}], "overflow": bool}
nlohmann::json bundle_to_json(const PathBundle& bundle);

}  // namespace eedp
