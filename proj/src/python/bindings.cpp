#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "eedp/benchmark.hpp"
#include "eedp/compress.hpp"
#include "eedp/dag.hpp"
#include "eedp/flatten.hpp"
#include "eedp/formats.hpp"
#include "eedp/graph_io.hpp"
#include "eedp/harness.hpp"
#include "eedp/paths.hpp"
#include "eedp/tokenizer.hpp"

namespace py = pybind11;
using namespace eedp;

namespace {

Method method_arg(const std::string& name) {
  const auto m = parse_method(name);
  if (!m) throw py::value_error("unknown method '" + name + "'");
  return *m;
}

Task task_arg(const std::string& name) {
  const auto t = parse_task(name);
  if (!t) throw py::value_error("unknown task '" + name + "'");
  return *t;
}

std::vector<std::pair<NodeId, NodeId>> arc_pairs(std::span<const Arc> arcs) {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(arcs.size());
  for (const Arc& a : arcs) out.emplace_back(a.head, a.tail);
  return out;
}

py::dict parsed_dict(const ParsedGraph& p) {
  py::dict d;
  d["node_count"] = p.node_count;
  d["arcs"] = arc_pairs(p.arcs);
  return d;
}

std::shared_ptr<const Tokenizer> tokenizer_arg(const std::string& kind, const std::string& vocab) {
  return make_tokenizer(kind, vocab);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "EEDP graph flattening and edge-prediction benchmark core";

  py::register_exception<GraphError>(m, "GraphError", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);

  py::class_<Graph>(m, "Graph")
      .def(py::init([](std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& arcs, bool undirected) {
             std::vector<Arc> list;
             list.reserve(arcs.size());
             for (auto [u, v] : arcs) list.push_back({u, v});
             return Graph::from_arcs(n, list, undirected);
           }),
           py::arg("n"), py::arg("arcs"), py::arg("undirected") = false)
      .def_property_readonly("node_count", &Graph::node_count)
      .def_property_readonly("arc_count", &Graph::arc_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def_property_readonly("undirected", &Graph::undirected_origin)
      .def_property_readonly("fingerprint", &Graph::fingerprint)
      .def("arcs", [](const Graph& g) { return arc_pairs(g.arcs()); })
      .def("successors", [](const Graph& g, NodeId u) {
        const auto s = g.successors(u);
        return std::vector<NodeId>(s.begin(), s.end());
      })
      .def("has_arc", &Graph::has_arc)
      .def("to_json", [](const Graph& g) { return graph_to_json(g).dump(); })
      .def_static("from_json", [](const std::string& text) { return graph_from_json(nlohmann::json::parse(text)); })
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
      .def("__repr__", [](const Graph& g) {
        return "<Graph n=" + std::to_string(g.node_count()) + " arcs=" + std::to_string(g.arc_count()) + ">";
      });

  m.def("load_tu_dataset", &load_tu_dataset, py::arg("adjacency_file"), py::arg("indicator_file"));
  m.def("read_graph_file", &read_graph_file);
  m.def("write_graph_list", &write_graph_list);

  m.def("reachable", &reachable);
  m.def("shortest_distance", &shortest_distance, py::arg("g"), py::arg("source"), py::arg("target"),
        py::arg("respect_direction") = true);
  m.def("all_simple_paths", [](const Graph& g, NodeId s, NodeId t) { return all_simple_paths(g, s, t).paths; });
  m.def("simple_path_of_length_exists", &simple_path_of_length_exists);

  m.def("build_eedp_dag", [](const Graph& g, NodeId start) {
    const Dag d = build_eedp_dag(g, start);
    py::dict out;
    out["arcs"] = arc_pairs(d.arcs());
    out["guard_skips"] = d.guard_skips();
    out["endpoints"] = endpoints(d).endpoints;
    out["acyclic"] = is_acyclic(d);
    return out;
  }, py::arg("g"), py::arg("start") = 0);

  m.def("extract_paths", [](const Graph& g, std::size_t max_len, std::size_t max_per_pair, std::size_t max_total) {
    const PathBundle bundle = extract_paths(g, endpoints(build_eedp_dag(g)), {max_len, max_per_pair, max_total});
    py::list groups;
    for (const PathGroup& group : bundle.groups) {
      groups.append(py::make_tuple(group.start, group.end, group.paths));
    }
    return py::make_tuple(groups, bundle.overflow);
  }, py::arg("g"), py::arg("max_len") = 0, py::arg("max_per_pair") = 10'000, py::arg("max_total") = 100'000);

  m.def("compress", [](const std::vector<Path>& paths) { return render(compress(paths)); },
        "Render the generalized-list form of paths sharing start and end");
  m.def("expand", [](const std::string& text) { return expand(parse_compressed(text)); },
        "Paths denoted by a rendered compressed path set");

  m.def("methods", [] {
    std::vector<std::string> names;
    for (Method mth : kAllMethods) names.emplace_back(method_name(mth));
    return names;
  });
  m.def("method_label", [](const std::string& name) { return std::string(method_label(method_arg(name))); });
  m.def("flatten", [](const Graph& g, const std::string& method, bool compress_paths, const std::string& tokenizer,
                      const std::string& vocab, std::uint64_t seed) {
    FlattenOptions opts;
    opts.compress_paths = compress_paths;
    opts.seed = seed;
    const auto tok = tokenizer_arg(tokenizer, vocab);
    const FlattenedGraph flat = flatten(g, method_arg(method), opts, *tok);
    py::dict out;
    out["text"] = flat.text;
    out["token_count"] = flat.token_count;
    out["stats"] = stats_to_json(flat, *tok).dump();
    return out;
  }, py::arg("g"), py::arg("method") = "eedp", py::arg("compress") = true, py::arg("tokenizer") = "heuristic",
     py::arg("vocab") = "", py::arg("seed") = 0);

  m.def("count_tokens", [](const std::string& text, const std::string& tokenizer, const std::string& vocab) {
    return tokenizer_arg(tokenizer, vocab)->count(text);
  }, py::arg("text"), py::arg("tokenizer") = "heuristic", py::arg("vocab") = "");

  m.def("parse_adjacency_list", [](const std::string& t) { return parsed_dict(parse_adjacency_list(t)); });
  m.def("parse_edge_list", [](const std::string& t) { return parsed_dict(parse_edge_list(t)); });
  m.def("parse_gml", [](const std::string& t) { return parsed_dict(parse_gml(t)); });
  m.def("parse_graphml", [](const std::string& t) { return parsed_dict(parse_graphml(t)); });
  m.def("parse_natural_language", [](const std::string& t) { return parsed_dict(parse_natural_language(t)); });
  m.def("graphml_schema_violations", &graphml_schema_violations);

  m.def("sample_cases", [](const Graph& g, std::size_t graph_index, std::uint64_t seed, std::size_t per_bucket) {
    py::list out;
    for (const TestCase& c : sample_cases(g, graph_index, seed, per_bucket)) out.append(case_to_json(c).dump());
    return out;
  }, py::arg("g"), py::arg("graph_index") = 0, py::arg("seed") = 0, py::arg("per_bucket") = 4,
     "Cases as JSON lines in the benchmark file format");
  m.def("generate_merged_like", &generate_merged_like, py::arg("n_graphs"), py::arg("seed") = 0);

  m.def("grade_dp", [](const Graph& g, NodeId s, NodeId t, std::int64_t answer) {
    const std::size_t d = bfs_distances(g, s, true)[t];
    TestCase c;
    c.source = s;
    c.target = t;
    c.task = Task::EpDp;
    c.gold_cp = d != kUnreachable;
    c.gold_dp = c.gold_cp ? static_cast<std::int64_t>(d) : -1;
    return grade_dp(g, c, answer).correct;
  });
  m.def("parse_answer", [](const std::string& task, const std::string& raw) {
    return parse_answer(task_arg(task), raw).str();
  });
}
