#include "eedp/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>

#include <fmt/core.h>

namespace eedp {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::size_t parse_positive(std::string_view field, std::size_t line) {
  field = trim(field);
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || value == 0) {
    throw FormatError(fmt::format("line {}: expected a positive integer, got '{}'",
                                  line, field),
                      line);
  }
  return value;
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

std::vector<Graph> load_tu_dataset(const fs::path& adjacency_file,
                                   const fs::path& indicator_file) {
  // Indicator: global node i (1-based) -> graph id.
  const auto indicator_lines = read_lines(indicator_file);
  std::vector<std::size_t> first_node;  // per graph, first global node (0-based)
  std::vector<std::size_t> graph_of;    // per global node, 0-based graph index
  for (std::size_t i = 0; i < indicator_lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (trim(indicator_lines[i]).empty()) {
      if (i + 1 == indicator_lines.size()) break;
      throw FormatError(fmt::format("line {}: empty indicator line", line_no), line_no);
    }
    const std::size_t gid = parse_positive(indicator_lines[i], line_no);
    const std::size_t expected_next = first_node.size() + 1;
    if (gid == expected_next) {
      first_node.push_back(i);
    } else if (gid != first_node.size()) {
      throw FormatError(
          fmt::format("line {}: graph id {} out of order (current graph {})", line_no,
                      gid, first_node.size()),
          line_no);
    }
    graph_of.push_back(gid - 1);
  }
  const std::size_t total_nodes = graph_of.size();

  std::vector<std::vector<Arc>> arcs(first_node.size());
  const auto adjacency_lines = read_lines(adjacency_file);
  for (std::size_t i = 0; i < adjacency_lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    std::string_view line = trim(adjacency_lines[i]);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string_view::npos) {
      throw FormatError(fmt::format("line {}: expected 'i, j'", line_no), line_no);
    }
    const std::size_t a = parse_positive(line.substr(0, comma), line_no);
    const std::size_t b = parse_positive(line.substr(comma + 1), line_no);
    if (a > total_nodes || b > total_nodes) {
      throw FormatError(fmt::format("line {}: node {} has no graph indicator", line_no,
                                    a > total_nodes ? a : b),
                        line_no);
    }
    const std::size_t ga = graph_of[a - 1];
    if (graph_of[b - 1] != ga) {
      throw FormatError(
          fmt::format("line {}: arc ({}, {}) crosses graphs {} and {}", line_no, a, b,
                      ga + 1, graph_of[b - 1] + 1),
          line_no);
    }
    const auto base = first_node[ga];
    arcs[ga].push_back(
        {static_cast<NodeId>(a - 1 - base), static_cast<NodeId>(b - 1 - base)});
  }

  std::vector<Graph> graphs;
  graphs.reserve(first_node.size());
  for (std::size_t gi = 0; gi < first_node.size(); ++gi) {
    const std::size_t begin = first_node[gi];
    const std::size_t end = gi + 1 < first_node.size() ? first_node[gi + 1] : total_nodes;
    Graph g;
    try {
      g = Graph::from_arcs(end - begin, arcs[gi], /*undirected=*/true);
    } catch (const GraphError& e) {
      throw FormatError(fmt::format("graph {}: {}", gi + 1, e.what()));
    }
    std::vector<std::string> labels;
    labels.reserve(end - begin);
    for (std::size_t v = begin; v < end; ++v) labels.push_back(std::to_string(v + 1));
    g.set_labels(std::move(labels));
    graphs.push_back(std::move(g));
  }
  return graphs;
}

std::vector<Graph> load_tu_directory(const fs::path& dir, const std::string& name) {
  return load_tu_dataset(dir / (name + "_A.txt"), dir / (name + "_graph_indicator.txt"));
}

void write_tu_dataset(const std::vector<Graph>& graphs, const fs::path& adjacency_file,
                      const fs::path& indicator_file) {
  std::ofstream adj(adjacency_file);
  std::ofstream ind(indicator_file);
  if (!adj || !ind) throw IoError("cannot write TU dataset files");
  std::size_t base = 0;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const Graph& g = graphs[gi];
    for (std::size_t v = 0; v < g.node_count(); ++v) ind << gi + 1 << '\n';
    for (const Arc& a : g.arcs()) {
      adj << base + a.head + 1 << ", " << base + a.tail + 1 << '\n';
    }
    base += g.node_count();
  }
}

nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json arcs = nlohmann::json::array();
  for (const Arc& a : g.arcs()) {
    if (g.undirected_origin() && a.head > a.tail) continue;
    arcs.push_back({a.head, a.tail});
  }
  return {{"n", g.node_count()}, {"directed", !g.undirected_origin()}, {"arcs", arcs}};
}

Graph graph_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("arcs")) {
    throw FormatError("graph JSON needs \"n\" and \"arcs\"");
  }
  const auto& n_field = doc.at("n");
  if (!n_field.is_number_unsigned() && !(n_field.is_number_integer() && n_field.get<long long>() >= 0)) {
    throw FormatError("\"n\" must be a non-negative integer");
  }
  const auto n = n_field.get<std::size_t>();
  const bool directed = doc.value("directed", true);
  std::vector<Arc> arcs;
  for (const auto& pair : doc.at("arcs")) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
        !pair[1].is_number_integer() || pair[0].get<long long>() < 0 ||
        pair[1].get<long long>() < 0) {
      throw FormatError("each arc must be a pair of non-negative integers");
    }
    arcs.push_back({pair[0].get<NodeId>(), pair[1].get<NodeId>()});
  }
  return Graph::from_arcs(n, arcs, !directed);
}

std::vector<Graph> read_graph_file(const fs::path& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(fmt::format("{}: {}", path.string(), e.what()));
  }
  std::vector<Graph> graphs;
  if (doc.is_array()) {
    for (const auto& item : doc) graphs.push_back(graph_from_json(item));
  } else {
    graphs.push_back(graph_from_json(doc));
  }
  return graphs;
}

void write_graph_list(const std::vector<Graph>& graphs, const fs::path& path) {
  nlohmann::json doc = nlohmann::json::array();
  for (const Graph& g : graphs) doc.push_back(graph_to_json(g));
  write_text_file(path, doc.dump() + "\n");
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
}

}  // namespace eedp
