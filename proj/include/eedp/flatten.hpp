#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "eedp/graph.hpp"
#include "eedp/paths.hpp"
#include "eedp/tokenizer.hpp"

namespace eedp {

enum class Method {
  Eedp,
  EedpNoAdjList,
  EedpNoPaths,
  EedpNoAdjListNoDagPaths,
  AdjMatrix,
  AdjList,
  EdgeList,
  EgoGraph,
  WalkSeq,
  Gml,
  GraphMl,
  Natural,
};

inline constexpr Method kAllMethods[] = {
    Method::Eedp,      Method::EedpNoAdjList, Method::EedpNoPaths, Method::EedpNoAdjListNoDagPaths,
    Method::AdjMatrix, Method::AdjList,       Method::EdgeList,    Method::EgoGraph,
    Method::WalkSeq,   Method::Gml,           Method::GraphMl,     Method::Natural,
};

/// Machine name, e.g. "eedp_no_adjlist".
std::string_view method_name(Method m);
/// Row label for reports, e.g. "EEDP w/o adjlist".
std::string_view method_label(Method m);
/// Accepts machine names plus the aliases "adjlist", "matrix", "ego", "walk".
std::optional<Method> parse_method(std::string_view name);

struct FlattenOptions {
  bool compress_paths = false;
  bool include_adjlist = true;
  bool include_paths = true;
  /// Drop paths whose arcs all lie in the DAG.
  bool drop_dag_paths = false;
  NodeId dag_start = 0;
  ExtractLimits limits{};
  std::uint64_t seed = 0;
  std::size_t walk_length = 5;
  std::size_t ego_radius = 1;

  /// Throws std::invalid_argument on inconsistent settings.
  void validate() const;
  /// Copy with the section flags implied by an EEDP variant.
  FlattenOptions for_method(Method m) const;
};

struct FlattenStats {
  std::size_t endpoints = 0;
  std::size_t path_count = 0;      // extracted, both directions
  std::size_t rendered_paths = 0;  // after direction dedup and ablation filtering
  std::size_t rendered_groups = 0;
  std::size_t guard_skips = 0;
  bool overflow = false;
};

struct FlattenedGraph {
  Method method = Method::Eedp;
  std::string text;
  std::size_t token_count = 0;
  bool compressed = false;
  std::uint64_t graph_fingerprint = 0;
  FlattenStats stats;
};

/// Paths section then adjacency-list section, each under a header line.
/// Without paths the text is exactly adjacency_list_text(g).
std::string eedp_text(const Graph& g, const FlattenOptions& opts, FlattenStats* stats = nullptr);

/// {0: [1, 2, 3], 1: [2, 3], 3: [2]}; nodes without out-arcs are omitted.
std::string adjacency_list_text(const Graph& g);
/// "Nodes: 0..n-1" followed by n rows of space-separated 0/1.
std::string adjacency_matrix_text(const Graph& g);
/// "(0, 1), (1, 2)"
std::string edge_list_text(const Graph& g);
/// One "node u: [...]" line per node listing nodes within `radius` hops.
std::string ego_graph_text(const Graph& g, std::size_t radius = 1);
/// One walk per start node in ascending order, at most `max_nodes` long.
std::string walk_sequence_text(const Graph& g, std::uint64_t seed, std::size_t max_nodes = 5);
std::string gml_text(const Graph& g);
std::string graphml_text(const Graph& g);
std::string natural_language_text(const Graph& g);

/// Text for any method plus its token count.
FlattenedGraph flatten(const Graph& g, Method method, const FlattenOptions& opts,
                       const Tokenizer& tokenizer);

nlohmann::json stats_to_json(const FlattenedGraph& flat, const Tokenizer& tokenizer);

}  // namespace eedp
