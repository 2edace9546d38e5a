#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "eedp/graph.hpp"

namespace eedp {

/// Malformed dataset or graph file. `line()` is 1-based, 0 when not
/// applicable.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A file could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// TU graph-kernel text format: `<name>_A.txt` holds one "i, j" pair of
// global 1-based node numbers per line, `<name>_graph_indicator.txt` holds
// the 1-based graph id of global node i on line i. Graph ids must appear in
// contiguous ascending blocks. Graphs are loaded as undirected.
std::vector<Graph> load_tu_dataset(const std::filesystem::path& adjacency_file,
                                   const std::filesystem::path& indicator_file);

/// Loads `<dir>/<name>_A.txt` and `<dir>/<name>_graph_indicator.txt`.
std::vector<Graph> load_tu_directory(const std::filesystem::path& dir,
                                     const std::string& name);

/// Writes graphs back in TU format. All arcs are listed, so undirected
/// graphs appear with both directions as in the public distributions.
void write_tu_dataset(const std::vector<Graph>& graphs,
                      const std::filesystem::path& adjacency_file,
                      const std::filesystem::path& indicator_file);

// JSON graph format: {"n": int, "directed": bool, "arcs": [[u, v], ...]}.
// Undirected graphs list each edge once with u < v.
nlohmann::json graph_to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& doc);

/// Reads either a single JSON graph object or an array of them.
std::vector<Graph> read_graph_file(const std::filesystem::path& path);
void write_graph_list(const std::vector<Graph>& graphs,
                      const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace eedp
