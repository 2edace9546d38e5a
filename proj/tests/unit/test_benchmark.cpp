#include <doctest.h>

#include <cmath>

#include "eedp/benchmark.hpp"
#include "eedp/graph_io.hpp"
#include "eedp/oracles.hpp"
#include "reference.hpp"
#include "temp_dir.hpp"

using namespace eedp;

namespace {

Graph chain(std::size_t n) {
  std::vector<Arc> arcs;
  for (NodeId v = 0; v + 1 < n; ++v) arcs.push_back({v, v + 1});
  return Graph::from_arcs(n, arcs, false);
}

TestCase dp_case(NodeId s, NodeId t, std::int64_t gold) {
  TestCase c;
  c.source = s;
  c.target = t;
  c.task = Task::EpDp;
  c.gold_cp = gold >= 0;
  c.gold_dp = gold;
  return c;
}

}  // namespace

TEST_CASE("bucket mapping") {
  CHECK(bucket_for_distance(1) == HopBucket::H1);
  CHECK(bucket_for_distance(3) == HopBucket::H3);
  CHECK_FALSE(bucket_for_distance(0).has_value());
  CHECK_FALSE(bucket_for_distance(4).has_value());
  CHECK(bucket_for_distance(5) == HopBucket::H5Plus);
  CHECK(bucket_for_distance(12) == HopBucket::H5Plus);
  CHECK_FALSE(bucket_for_distance(kUnreachable).has_value());
  for (HopBucket b : kAllBuckets) CHECK(parse_bucket(bucket_name(b)) == b);
  CHECK(bucket_label(HopBucket::H5Plus) == "\xE2\x89\xA5" "5-hop");
  for (Task t : kAllTasks) CHECK(parse_task(task_name(t)) == t);
}

TEST_CASE("chain of seven nodes") {
  // Undirected distances on 0->1->...->6: pairs at distance 4 are excluded.
  const Graph g = chain(7);
  const auto cases = sample_cases(g, 0, 1, 100);
  std::array<std::size_t, 4> counts{};
  for (const TestCase& c : cases) {
    if (c.task != Task::EpCp) continue;
    ++counts[static_cast<std::size_t>(c.bucket)];
    const long d = std::labs(static_cast<long>(c.source) - static_cast<long>(c.target));
    CHECK(d != 4);
    CHECK(c.gold_cp == (c.source < c.target));
    CHECK(c.gold_dp == (c.gold_cp ? d : -1));
  }
  CHECK(counts == std::array<std::size_t, 4>{12, 10, 8, 6});
}

TEST_CASE("labels agree with independent oracles") {
  const auto graphs = ref::structural_corpus(200, 71);
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const Graph& g = graphs[gi];
    const auto arcs = ref::arc_set(g.arcs());
    const auto closure = ref::closure(g.node_count(), arcs);
    const auto directed = ref::floyd_warshall(g.node_count(), arcs, true);
    const auto undirected = ref::floyd_warshall(g.node_count(), arcs, false);
    const auto cases = sample_cases(g, gi, 5);
    std::set<std::tuple<NodeId, NodeId, Task>> seen;
    std::array<std::size_t, 4> per_bucket{};
    for (const TestCase& c : cases) {
      REQUIRE(seen.insert({c.source, c.target, c.task}).second);
      REQUIRE(c.graph == gi);
      const long ud = undirected[c.source][c.target];
      REQUIRE(bucket_for_distance(static_cast<std::size_t>(ud)) == c.bucket);
      REQUIRE(c.gold_cp == closure[c.source][c.target]);
      const long dd = directed[c.source][c.target];
      REQUIRE(c.gold_dp == (dd == ref::kInf ? -1 : dd));
      if (c.task == Task::EpCp) ++per_bucket[static_cast<std::size_t>(c.bucket)];
    }
    for (std::size_t b = 0; b < 4; ++b) {
      std::size_t available = 0;
      for (NodeId s = 0; s < g.node_count(); ++s)
        for (NodeId t = 0; t < g.node_count(); ++t)
          if (s != t && undirected[s][t] != ref::kInf &&
              bucket_for_distance(static_cast<std::size_t>(undirected[s][t])) == kAllBuckets[b])
            ++available;
      REQUIRE(per_bucket[b] == std::min<std::size_t>(4, available));
    }
    REQUIRE(cases.size() <= 32);
  }
}

TEST_CASE("sampling is deterministic and seed dependent") {
  const auto graphs = ref::structural_corpus(50, 72);
  const BenchmarkSet a = build_benchmark("x", graphs, 3);
  const BenchmarkSet b = build_benchmark("x", graphs, 3);
  const BenchmarkSet c = build_benchmark("x", graphs, 4);
  CHECK(a.cases == b.cases);
  CHECK(a.cases != c.cases);
  CHECK(a.graph_count == 50);
  CHECK_THROWS_AS(sample_cases(Graph{}, 0, 0), std::invalid_argument);
}

TEST_CASE("subsample indices") {
  const auto idx = subsample_indices(100, 10, 5);
  CHECK(idx.size() == 10);
  CHECK(std::is_sorted(idx.begin(), idx.end()));
  CHECK(std::set<std::size_t>(idx.begin(), idx.end()).size() == 10);
  CHECK(subsample_indices(5, 9, 1) == std::vector<std::size_t>{0, 1, 2, 3, 4});
  CHECK(idx == subsample_indices(100, 10, 5));
}

TEST_CASE("dp grading") {
  const Graph diamond = Graph::from_arcs(4, std::vector<Arc>{{0, 1}, {0, 2}, {1, 3}, {2, 3}}, false);
  CHECK(grade_dp(diamond, dp_case(0, 3, 2), 2).correct);
  CHECK_FALSE(grade_dp(diamond, dp_case(0, 3, 2), 1).correct);
  CHECK_FALSE(grade_dp(diamond, dp_case(0, 3, 2), 3).correct);
  CHECK_FALSE(grade_dp(diamond, dp_case(0, 3, 2), -1).correct);
  CHECK_FALSE(grade_dp(diamond, dp_case(0, 3, 2), 0).correct);
  CHECK(grade_dp(diamond, dp_case(3, 0, -1), -1).correct);
  CHECK_FALSE(grade_dp(diamond, dp_case(3, 0, -1), 2).correct);
  CHECK(grade_dp(diamond, dp_case(0, 3, 2), -5).malformed);

  // Simple paths 0 -> 1 -> 5 and 0 -> 2 -> 3 -> 4 -> 5: lengths 2 and 4, never 3.
  const Graph two_four =
      Graph::from_arcs(6, std::vector<Arc>{{0, 1}, {1, 5}, {0, 2}, {2, 3}, {3, 4}, {4, 5}}, false);
  CHECK(grade_dp(two_four, dp_case(0, 5, 2), 2).correct);
  CHECK(grade_dp(two_four, dp_case(0, 5, 2), 4).correct);
  CHECK_FALSE(grade_dp(two_four, dp_case(0, 5, 2), 3).correct);
  CHECK_FALSE(grade_dp(two_four, dp_case(0, 5, 2), 5).correct);

  TestCase cp = dp_case(0, 3, 2);
  cp.task = Task::EpCp;
  CHECK(grade_cp(cp, true));
  CHECK_FALSE(grade_cp(cp, false));
}

TEST_CASE("merged-like generator") {
  const auto graphs = generate_merged_like(2000, 1);
  const DatasetStats s = dataset_stats(graphs);
  CHECK(s.graphs == 2000);
  CHECK(std::abs(s.mean_nodes - 13.2) < 1.0);
  CHECK(std::abs(s.mean_arcs - 12.1) < 1.0);
  for (const Graph& g : graphs) REQUIRE_FALSE(g.undirected_origin());
  CHECK(generate_merged_like(3, 9)[2] == generate_merged_like(3, 9)[2]);
}

TEST_CASE("dataset stats count undirected edges once") {
  const std::vector<Graph> gs{Graph::from_arcs(3, std::vector<Arc>{{0, 1}, {1, 2}}, true)};
  const DatasetStats s = dataset_stats(gs);
  CHECK(s.mean_edges == 2.0);
  CHECK(s.mean_arcs == 4.0);
}

TEST_CASE("JSONL and manifest") {
  testing_support::TempDir dir;
  const auto graphs = ref::structural_corpus(20, 73);
  const BenchmarkSet set = build_benchmark("corpus", graphs, 2);
  write_benchmark_jsonl(set, dir / "b.jsonl");
  CHECK(read_benchmark_jsonl(dir / "b.jsonl") == set.cases);
  write_graph_list(graphs, dir / "graphs.json");
  const auto manifest = benchmark_manifest(set, graphs, dir / "graphs.json", dir.path());
  CHECK(manifest.at("graphs").at("path") == "graphs.json");
  CHECK(manifest.at("graphs").at("sha256") == sha256_file(dir / "graphs.json"));
  CHECK(manifest.at("total_cases") == set.cases.size());
  CHECK(manifest.at("schema") == kBenchmarkSchema);

  const auto line = case_to_json(set.cases.front());
  CHECK(line.at("schema") == kBenchmarkSchema);
  auto wrong = line;
  wrong["schema"] = 99;
  CHECK_THROWS_AS(case_from_json(wrong), std::invalid_argument);
  auto missing = line;
  missing.erase("gold_dp");
  CHECK_THROWS_AS(case_from_json(missing), std::invalid_argument);

  write_text_file(dir / "bad.jsonl", line.dump() + "\n{not json\n");
  try {
    read_benchmark_jsonl(dir / "bad.jsonl");
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(e.line() == 2);
  }
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
