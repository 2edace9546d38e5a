#include "eedp/flatten.hpp"

#include <array>
#include <stdexcept>

#include <fmt/core.h>
#include <fmt/format.h>

#include "eedp/compress.hpp"
#include "eedp/dag.hpp"
#include "eedp/oracles.hpp"
#include "eedp/rng.hpp"
#include "eedp/templates.hpp"

namespace eedp {

namespace {

struct MethodInfo {
  Method method;
  std::string_view name;
  std::string_view label;
};

constexpr std::array<MethodInfo, 12> kMethodTable{{
    {Method::Eedp, "eedp", "EEDP"},
    {Method::EedpNoAdjList, "eedp_no_adjlist", "EEDP w/o adjlist"},
    {Method::EedpNoPaths, "eedp_no_paths", "EEDP w/o paths"},
    {Method::EedpNoAdjListNoDagPaths, "eedp_no_adjlist_no_dagpaths", "EEDP w/o adjlist+DAG paths"},
    {Method::AdjMatrix, "adj_matrix", "Adjacency Matrix"},
    {Method::AdjList, "adj_list", "Adjacency List"},
    {Method::EdgeList, "edge_list", "Edge List"},
    {Method::EgoGraph, "ego_graph", "Ego-graph"},
    {Method::WalkSeq, "walk_seq", "Walk Sequence"},
    {Method::Gml, "gml", "GML"},
    {Method::GraphMl, "graphml", "GraphML"},
    {Method::Natural, "natural", "Natural Language"},
}};

const MethodInfo& info(Method m) {
  for (const auto& entry : kMethodTable) {
    if (entry.method == m) return entry;
  }
  throw std::invalid_argument("unknown method");
}

bool is_eedp(Method m) {
  return m == Method::Eedp || m == Method::EedpNoAdjList || m == Method::EedpNoPaths ||
         m == Method::EedpNoAdjListNoDagPaths;
}

}  // namespace

std::string_view method_name(Method m) { return info(m).name; }
std::string_view method_label(Method m) { return info(m).label; }

std::optional<Method> parse_method(std::string_view name) {
  for (const auto& entry : kMethodTable) {
    if (entry.name == name) return entry.method;
  }
  if (name == "adjlist") return Method::AdjList;
  if (name == "matrix") return Method::AdjMatrix;
  if (name == "ego") return Method::EgoGraph;
  if (name == "walk") return Method::WalkSeq;
  return std::nullopt;
}

void FlattenOptions::validate() const {
  if (drop_dag_paths && !include_paths) {
    throw std::invalid_argument("drop_dag_paths requires include_paths");
  }
  if (!include_paths && !include_adjlist) {
    throw std::invalid_argument("at least one EEDP section must be included");
  }
  if (walk_length == 0) throw std::invalid_argument("walk_length must be positive");
  if (ego_radius == 0) throw std::invalid_argument("ego_radius must be positive");
  if (limits.max_per_pair == 0 || limits.max_total == 0) {
    throw std::invalid_argument("path limits must be positive");
  }
}

FlattenOptions FlattenOptions::for_method(Method m) const {
  FlattenOptions out = *this;
  out.include_paths = true;
  out.include_adjlist = true;
  out.drop_dag_paths = false;
  switch (m) {
    case Method::EedpNoAdjList:
      out.include_adjlist = false;
      break;
    case Method::EedpNoPaths:
      out.include_paths = false;
      break;
    case Method::EedpNoAdjListNoDagPaths:
      out.include_adjlist = false;
      out.drop_dag_paths = true;
      break;
    default:
      break;
  }
  return out;
}

std::string eedp_text(const Graph& g, const FlattenOptions& opts, FlattenStats* stats) {
  opts.validate();
  FlattenStats local;
  if (!opts.include_paths) {
    if (stats) *stats = local;
    return adjacency_list_text(g);
  }

  const Dag dag = build_eedp_dag(g, opts.dag_start);
  const EndpointSet ends = endpoints(dag);
  const PathBundle bundle = extract_paths(g, ends, opts.limits);
  local.endpoints = ends.endpoints.size();
  local.path_count = bundle.path_count();
  local.guard_skips = dag.guard_skips();
  local.overflow = bundle.overflow;

  std::optional<DagPathMask> mask;
  if (opts.drop_dag_paths) mask = classify_dag_paths(bundle, dag);

  std::string out(templates::kPathsHeader);
  std::size_t flat_index = 0;
  for (const PathGroup& group : bundle.groups) {
    const std::size_t group_begin = flat_index;
    flat_index += group.paths.size();
    // On symmetric graphs the (end, start) group is the reversal of this one.
    if (g.undirected_origin() && group.start > group.end) continue;
    std::vector<Path> kept;
    for (std::size_t i = 0; i < group.paths.size(); ++i) {
      if (mask && (*mask)[group_begin + i]) continue;
      kept.push_back(group.paths[i]);
    }
    if (kept.empty()) continue;
    ++local.rendered_groups;
    local.rendered_paths += kept.size();
    if (opts.compress_paths) {
      out += '\n';
      out += render(compress(kept));
    } else {
      for (const Path& p : kept) {
        out += '\n';
        out += render_path(p);
      }
    }
  }
  if (local.rendered_groups == 0) {
    out += '\n';
    out += templates::kNoPaths;
  }
  if (opts.include_adjlist) {
    out += '\n';
    out += templates::kAdjListHeader;
    out += '\n';
    out += adjacency_list_text(g);
  }
  if (stats) *stats = local;
  return out;
}

std::string adjacency_list_text(const Graph& g) {
  std::string out = "{";
  bool first = true;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const auto succ = g.successors(u);
    if (succ.empty()) continue;
    if (!first) out += ", ";
    first = false;
    out += fmt::format("{}: [{}]", u, fmt::join(succ, ", "));
  }
  out += '}';
  return out;
}

std::string adjacency_matrix_text(const Graph& g) {
  const std::size_t n = g.node_count();
  std::string out(templates::kMatrixNodesPrefix);
  if (n == 0) {
    out += templates::kMatrixNoNodes;
    return out;
  }
  out += fmt::format("0..{}", n - 1);
  for (NodeId u = 0; u < n; ++u) {
    out += '\n';
    for (NodeId v = 0; v < n; ++v) {
      if (v) out += ' ';
      out += g.has_arc(u, v) ? '1' : '0';
    }
  }
  return out;
}

std::string edge_list_text(const Graph& g) {
  std::string out;
  for (const Arc& a : g.arcs()) {
    if (!out.empty()) out += ", ";
    out += fmt::format("({}, {})", a.head, a.tail);
  }
  return out;
}

std::string ego_graph_text(const Graph& g, std::size_t radius) {
  std::string out;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    std::vector<NodeId> members;
    if (radius == 1) {
      const auto succ = g.successors(u);
      members.assign(succ.begin(), succ.end());
    } else {
      const auto dist = bfs_distances(g, u, true);
      for (NodeId v = 0; v < g.node_count(); ++v) {
        if (v != u && dist[v] != kUnreachable && dist[v] <= radius) members.push_back(v);
      }
    }
    if (u) out += '\n';
    out += fmt::format("{}{}: [{}]", templates::kEgoPrefix, u, fmt::join(members, ", "));
  }
  return out;
}

std::string walk_sequence_text(const Graph& g, std::uint64_t seed, std::size_t max_nodes) {
  Rng rng(seed);
  std::string out;
  for (NodeId start = 0; start < g.node_count(); ++start) {
    Path walk{start};
    while (walk.size() < max_nodes) {
      const auto succ = g.successors(walk.back());
      if (succ.empty()) break;
      walk.push_back(succ[rng.below(succ.size())]);
    }
    if (start) out += '\n';
    out += render_path(walk);
  }
  return out;
}

std::string gml_text(const Graph& g) {
  std::string out = "graph [\n  directed 1\n";
  for (NodeId v = 0; v < g.node_count(); ++v) {
    out += fmt::format("  node [\n    id {}\n  ]\n", v);
  }
  for (const Arc& a : g.arcs()) {
    out += fmt::format("  edge [\n    source {}\n    target {}\n  ]\n", a.head, a.tail);
  }
  out += "]";
  return out;
}

std::string graphml_text(const Graph& g) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += fmt::format(
      "<graphml xmlns=\"{}\" xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\" "
      "xsi:schemaLocation=\"{}\">\n",
      templates::kGraphMlNamespace, templates::kGraphMlSchemaLocation);
  out += "  <graph id=\"G\" edgedefault=\"directed\">\n";
  for (NodeId v = 0; v < g.node_count(); ++v) {
    out += fmt::format("    <node id=\"n{}\"/>\n", v);
  }
  for (const Arc& a : g.arcs()) {
    out += fmt::format("    <edge source=\"n{}\" target=\"n{}\"/>\n", a.head, a.tail);
  }
  out += "  </graph>\n</graphml>";
  return out;
}

std::string natural_language_text(const Graph& g) {
  if (g.arc_count() == 0) return std::string(templates::kNaturalEmpty);
  std::string out;
  for (const Arc& a : g.arcs()) {
    if (!out.empty()) out += '\n';
    out += fmt::format("{}{}{}{}{}", templates::kNaturalPrefix, a.head, templates::kNaturalMiddle,
                       a.tail, templates::kNaturalSuffix);
  }
  return out;
}

FlattenedGraph flatten(const Graph& g, Method method, const FlattenOptions& opts,
                       const Tokenizer& tokenizer) {
  FlattenedGraph flat;
  flat.method = method;
  flat.graph_fingerprint = g.fingerprint();
  if (is_eedp(method)) {
    const FlattenOptions effective = opts.for_method(method);
    flat.text = eedp_text(g, effective, &flat.stats);
    flat.compressed = effective.compress_paths && effective.include_paths;
  } else {
    opts.validate();
    switch (method) {
      case Method::AdjMatrix: flat.text = adjacency_matrix_text(g); break;
      case Method::AdjList: flat.text = adjacency_list_text(g); break;
      case Method::EdgeList: flat.text = edge_list_text(g); break;
      case Method::EgoGraph: flat.text = ego_graph_text(g, opts.ego_radius); break;
      case Method::WalkSeq: flat.text = walk_sequence_text(g, opts.seed, opts.walk_length); break;
      case Method::Gml: flat.text = gml_text(g); break;
      case Method::GraphMl: flat.text = graphml_text(g); break;
      case Method::Natural: flat.text = natural_language_text(g); break;
      default: throw std::invalid_argument("unhandled method");
    }
  }
  flat.token_count = tokenizer.count(flat.text);
  return flat;
}

nlohmann::json stats_to_json(const FlattenedGraph& flat, const Tokenizer& tokenizer) {
  return {
      {"method", method_name(flat.method)},
      {"compressed", flat.compressed},
      {"token_count", flat.token_count},
      {"tokenizer", tokenizer.name()},
      {"tokenizer_exact", tokenizer.exact()},
      {"bytes", flat.text.size()},
      {"endpoints", flat.stats.endpoints},
      {"path_count", flat.stats.path_count},
      {"rendered_paths", flat.stats.rendered_paths},
      {"rendered_groups", flat.stats.rendered_groups},
      {"guard_skips", flat.stats.guard_skips},
      {"overflow", flat.stats.overflow},
  };
}

}  // namespace eedp
