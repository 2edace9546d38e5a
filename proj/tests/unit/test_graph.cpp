#include <doctest.h>

#include <fstream>

#include "eedp/graph.hpp"
#include "eedp/graph_io.hpp"
#include "temp_dir.hpp"

using namespace eedp;

namespace {

Graph make(std::size_t n, std::vector<Arc> arcs, bool undirected = false) {
  return Graph::from_arcs(n, arcs, undirected);
}

void write(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

}  // namespace

TEST_CASE("arcs are sorted and deduplicated") {
  const Graph g = make(4, {{2, 3}, {0, 1}, {2, 3}, {0, 2}});
  REQUIRE(g.arc_count() == 3);
  CHECK(g.arcs()[0] == Arc{0, 1});
  CHECK(g.arcs()[2] == Arc{2, 3});
  CHECK(g.edge_count() == 3);
  CHECK_FALSE(g.undirected_origin());
}

TEST_CASE("undirected input becomes symmetric arcs") {
  const Graph g = make(3, {{0, 1}, {2, 1}}, true);
  CHECK(g.arc_count() == 4);
  CHECK(g.edge_count() == 2);
  CHECK(g.has_arc(1, 0));
  CHECK(g.has_arc(1, 2));
  CHECK(g.undirected_origin());
}

TEST_CASE("adjacency queries") {
  const Graph g = make(4, {{0, 3}, {0, 1}, {2, 1}});
  const auto succ = g.successors(0);
  REQUIRE(succ.size() == 2);
  CHECK(succ[0] == 1);
  CHECK(succ[1] == 3);
  CHECK(g.in_degree(1) == 2);
  CHECK(g.out_degree(3) == 0);
  CHECK(g.predecessors(1).size() == 2);
  CHECK_FALSE(g.has_arc(1, 0));
  CHECK_THROWS_AS(g.check_node(4), std::out_of_range);
}

TEST_CASE("invalid arcs are rejected") {
  CHECK_THROWS_AS(make(2, {{1, 1}}), GraphError);
  CHECK_THROWS_AS(make(2, {{0, 2}}), GraphError);
  try {
    make(3, {{0, 1}, {2, 2}});
  } catch (const GraphError& e) {
    CHECK(e.arc() == Arc{2, 2});
  }
}

TEST_CASE("fingerprint separates structure") {
  CHECK(make(3, {{0, 1}}).fingerprint() == make(3, {{0, 1}}).fingerprint());
  CHECK(make(3, {{0, 1}}).fingerprint() != make(3, {{1, 0}}).fingerprint());
  CHECK(make(3, {{0, 1}}).fingerprint() != make(4, {{0, 1}}).fingerprint());
  CHECK(make(3, {{0, 1}}) == make(3, {{0, 1}, {0, 1}}));
}

TEST_CASE("json round trip") {
  for (bool undirected : {false, true}) {
    const Graph g = make(5, {{0, 1}, {1, 2}, {4, 3}}, undirected);
    const Graph back = graph_from_json(graph_to_json(g));
    CHECK(back == g);
    CHECK(back.undirected_origin() == undirected);
  }
  CHECK_THROWS_AS(graph_from_json(nlohmann::json::parse(R"({"n": 2})")), FormatError);
  CHECK_THROWS_AS(graph_from_json(nlohmann::json::parse(R"({"n": 2, "arcs": [[0, 5]]})")), std::exception);
}

TEST_CASE("TU dataset loading") {
  testing_support::TempDir dir;
  // Graph 1: path 1-2-3 (listed both ways). Graph 2: edge 4-5, isolated 6.
  write(dir / "T_A.txt", "1, 2\n2, 1\n2, 3\n3, 2\n4, 5\n5, 4\n");
  write(dir / "T_graph_indicator.txt", "1\n1\n1\n2\n2\n2\n");
  const auto graphs = load_tu_directory(dir.path(), "T");
  REQUIRE(graphs.size() == 2);
  CHECK(graphs[0].node_count() == 3);
  CHECK(graphs[0].edge_count() == 2);
  CHECK(graphs[0].arc_count() == 4);
  CHECK(graphs[1].node_count() == 3);
  CHECK(graphs[1].has_arc(1, 0));
  CHECK(graphs[1].out_degree(2) == 0);

  SUBCASE("write and reload") {
    write_tu_dataset(graphs, dir / "U_A.txt", dir / "U_graph_indicator.txt");
    const auto again = load_tu_directory(dir.path(), "U");
    REQUIRE(again.size() == 2);
    CHECK(again[0] == graphs[0]);
    CHECK(again[1] == graphs[1]);
  }
  SUBCASE("arc across graphs") {
    write(dir / "X_A.txt", "3, 4\n");
    write(dir / "X_graph_indicator.txt", "1\n1\n1\n2\n");
    CHECK_THROWS_AS(load_tu_directory(dir.path(), "X"), FormatError);
  }
  SUBCASE("indicator blocks out of order") {
    write(dir / "Y_A.txt", "1, 2\n");
    write(dir / "Y_graph_indicator.txt", "1\n2\n1\n");
    CHECK_THROWS_AS(load_tu_directory(dir.path(), "Y"), FormatError);
  }
  SUBCASE("garbage line") {
    write(dir / "Z_A.txt", "1; 2\n");
    write(dir / "Z_graph_indicator.txt", "1\n1\n");
    CHECK_THROWS_AS(load_tu_directory(dir.path(), "Z"), FormatError);
  }
  SUBCASE("missing files") {
    CHECK_THROWS_AS(load_tu_directory(dir.path(), "missing"), IoError);
  }
}

TEST_CASE("graph list files") {
  testing_support::TempDir dir;
  std::vector<Graph> graphs{make(2, {{0, 1}}), make(3, {{1, 2}}, true)};
  write_graph_list(graphs, dir / "g.json");
  const auto back = read_graph_file(dir / "g.json");
  REQUIRE(back.size() == 2);
  CHECK(back[0] == graphs[0]);
  CHECK(back[1] == graphs[1]);
  write(dir / "one.json", R"({"n": 3, "directed": true, "arcs": [[0, 1], [1, 2]]})");
  CHECK(read_graph_file(dir / "one.json").size() == 1);
}
