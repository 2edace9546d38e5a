#include <doctest.h>

#include "eedp/paths.hpp"
#include "reference.hpp"

using namespace eedp;

TEST_CASE("diamond") {
  const Graph g = Graph::from_arcs(4, std::vector<Arc>{{0, 1}, {0, 2}, {1, 3}, {2, 3}}, false);
  const Dag d = build_eedp_dag(g);
  const EndpointSet ends = endpoints(d);
  CHECK(ends.endpoints == std::vector<NodeId>{0, 3});
  const PathBundle b = extract_paths(g, ends);
  REQUIRE(b.groups.size() == 1);
  CHECK(b.groups[0].start == 0);
  CHECK(b.groups[0].end == 3);
  CHECK(b.groups[0].paths == std::vector<Path>{{0, 1, 3}, {0, 2, 3}});
  CHECK_FALSE(b.overflow);
  CHECK(b.path_count() == 2);
  const DagPathMask mask = classify_dag_paths(b, d);
  CHECK(mask.size() == 2);
  CHECK(mask[0]);
  CHECK(mask[1]);
}

TEST_CASE("extraction equals brute force between endpoint pairs") {
  for (const Graph& g : ref::small_corpus(200, 31)) {
    const Dag d = build_eedp_dag(g);
    const EndpointSet ends = endpoints(d);
    const PathBundle b = extract_paths(g, ends);
    REQUIRE_FALSE(b.overflow);
    const auto arcs = ref::arc_set(g.arcs());
    std::size_t expected_groups = 0;
    for (NodeId s : ends.endpoints) {
      for (NodeId t : ends.endpoints) {
        if (s == t) continue;
        const auto brute = ref::brute_simple_paths(g.node_count(), arcs, s, t);
        if (brute.empty()) continue;
        const auto it = std::find_if(b.groups.begin(), b.groups.end(),
                                     [&](const PathGroup& grp) { return grp.start == s && grp.end == t; });
        REQUIRE(it != b.groups.end());
        REQUIRE(std::set<Path>(it->paths.begin(), it->paths.end()) == brute);
        REQUIRE(it->paths.size() == brute.size());
        ++expected_groups;
      }
    }
    REQUIRE(b.groups.size() == expected_groups);
    for (std::size_t i = 1; i < b.groups.size(); ++i) {
      REQUIRE(std::pair(b.groups[i - 1].start, b.groups[i - 1].end) < std::pair(b.groups[i].start, b.groups[i].end));
    }
  }
}

TEST_CASE("DAG path classification") {
  for (const Graph& g : ref::small_corpus(150, 32)) {
    const Dag d = build_eedp_dag(g);
    const PathBundle b = extract_paths(g, endpoints(d));
    const DagPathMask mask = classify_dag_paths(b, d);
    std::size_t i = 0;
    for (const PathGroup& grp : b.groups) {
      for (const Path& p : grp.paths) {
        bool all = true;
        for (std::size_t k = 0; k + 1 < p.size(); ++k) all = all && d.has_arc(p[k], p[k + 1]);
        REQUIRE(mask[i++] == all);
      }
    }
    REQUIRE(i == mask.size());
  }
}

TEST_CASE("caps set overflow") {
  std::vector<Arc> arcs;
  for (NodeId u = 0; u < 6; ++u)
    for (NodeId v = u + 1; v < 6; ++v) arcs.push_back({u, v});
  const Graph g = Graph::from_arcs(6, arcs, true);
  const EndpointSet ends = endpoints(build_eedp_dag(g));
  const PathBundle full = extract_paths(g, ends);
  CHECK_FALSE(full.overflow);
  const PathBundle per_pair = extract_paths(g, ends, {0, 3, 100'000});
  CHECK(per_pair.overflow);
  for (const PathGroup& grp : per_pair.groups) CHECK(grp.paths.size() <= 3);
  const PathBundle total = extract_paths(g, ends, {0, 10'000, 7});
  CHECK(total.overflow);
  CHECK(total.path_count() <= 7);
  const PathBundle short_paths = extract_paths(g, ends, {1, 10'000, 100'000});
  for (const PathGroup& grp : short_paths.groups)
    for (const Path& p : grp.paths) CHECK(p.size() == 2);
}

TEST_CASE("mismatched graph is rejected") {
  const Graph a = Graph::from_arcs(3, std::vector<Arc>{{0, 1}, {1, 2}}, false);
  const Graph b = Graph::from_arcs(3, std::vector<Arc>{{0, 1}}, false);
  const PathBundle bundle = extract_paths(a, endpoints(build_eedp_dag(a)));
  CHECK_THROWS_AS(classify_dag_paths(bundle, build_eedp_dag(b)), std::invalid_argument);
  CHECK(bundle_to_json(bundle).at("pairs").size() == bundle.groups.size());
}
