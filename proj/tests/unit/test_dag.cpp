#include <doctest.h>

#include "eedp/dag.hpp"
#include "reference.hpp"

using namespace eedp;

namespace {

ref::ArcSet dag_arcs(const Graph& g, NodeId start = 0) { return ref::arc_set(build_eedp_dag(g, start).arcs()); }

}  // namespace

TEST_CASE("hand-simulated examples") {
  SUBCASE("single undirected edge") {
    const Graph g = Graph::from_arcs(2, std::vector<Arc>{{0, 1}}, true);
    CHECK(dag_arcs(g) == ref::ArcSet{{0, 1}});
  }
  SUBCASE("undirected triangle") {
    const Graph g = Graph::from_arcs(3, std::vector<Arc>{{0, 1}, {1, 2}, {0, 2}}, true);
    CHECK(dag_arcs(g) == ref::ArcSet{{0, 1}, {0, 2}, {1, 2}});
  }
  SUBCASE("directed chain from the middle") {
    // 0 -> 1 -> 2 -> 3 started at 2 keeps 2 -> 3, then restarts at 0. By then
    // node 2 has been a head with queued out-arcs, so 1 -> 2 is dropped.
    const Graph g = Graph::from_arcs(4, std::vector<Arc>{{0, 1}, {1, 2}, {2, 3}}, false);
    CHECK(dag_arcs(g, 2) == ref::ArcSet{{0, 1}, {2, 3}});
  }
  SUBCASE("isolated nodes stay in the node set") {
    const Graph g = Graph::from_arcs(4, std::vector<Arc>{{1, 2}}, false);
    const Dag d = build_eedp_dag(g);
    CHECK(d.node_count() == 4);
    CHECK(ref::arc_set(d.arcs()) == ref::ArcSet{{1, 2}});
    CHECK(endpoints(d).endpoints == std::vector<NodeId>{0, 1, 2, 3});
  }
}

TEST_CASE("directed cycles are broken by the skip rule") {
  // 2 -> 0 arrives after 0 has been a head with queued out-arcs.
  const Graph g = Graph::from_arcs(3, std::vector<Arc>{{0, 1}, {1, 2}, {2, 0}}, false);
  const Dag d = build_eedp_dag(g);
  CHECK(is_acyclic(d));
  CHECK(d.guard_skips() == 0);
  CHECK(ref::arc_set(d.arcs()) == ref::ArcSet{{0, 1}, {1, 2}});
  CHECK(ref::literal_dag(3, ref::arc_set(g.arcs()), 0, false).arcs == ref::arc_set(d.arcs()));
}

TEST_CASE("builder equals the literal transcription") {
  std::size_t unguarded_agreements = 0;
  for (const Graph& g : ref::structural_corpus(400, 21)) {
    const Dag d = build_eedp_dag(g);
    const auto edges = ref::arc_set(g.arcs());
    const auto guarded = ref::literal_dag(g.node_count(), edges, 0, true);
    REQUIRE(ref::arc_set(d.arcs()) == guarded.arcs);
    REQUIRE(d.guard_skips() == guarded.guard_hits);
    if (d.guard_skips() == 0) {
      REQUIRE(ref::literal_dag(g.node_count(), edges, 0, false).arcs == guarded.arcs);
      ++unguarded_agreements;
    }
  }
  CHECK(unguarded_agreements > 200);
}

TEST_CASE("structural properties") {
  for (const Graph& g : ref::structural_corpus(400, 22)) {
    const Dag d = build_eedp_dag(g);
    REQUIRE(is_acyclic(d));
    REQUIRE(d.node_count() == g.node_count());
    REQUIRE(d.source_fingerprint() == g.fingerprint());
    for (const Arc& a : d.arcs()) {
      REQUIRE(g.has_arc(a.head, a.tail));
      REQUIRE_FALSE(d.has_arc(a.tail, a.head));
    }
    const EndpointSet e = endpoints(d);
    REQUIRE_FALSE(e.endpoints.empty());
    REQUIRE_FALSE(e.sources.empty());
    REQUIRE_FALSE(e.sinks.empty());
    const auto expected = ref::endpoints_of(g.node_count(), ref::arc_set(d.arcs()));
    REQUIRE(std::set<NodeId>(e.endpoints.begin(), e.endpoints.end()) == expected);
    // Undirected inputs lose no edge: each edge keeps one orientation.
    if (g.undirected_origin() && d.guard_skips() == 0) {
      for (const Arc& a : g.arcs()) REQUIRE((d.has_arc(a.head, a.tail) || d.has_arc(a.tail, a.head)));
    }
  }
}

TEST_CASE("errors and acyclicity checker") {
  CHECK_THROWS_AS(build_eedp_dag(Graph{}), std::invalid_argument);
  const Graph g = Graph::from_arcs(2, std::vector<Arc>{{0, 1}}, false);
  CHECK_THROWS_AS(build_eedp_dag(g, 5), std::out_of_range);
  const std::vector<Arc> cyc{{0, 1}, {1, 0}};
  CHECK_FALSE(is_acyclic(2, cyc));
  CHECK(is_acyclic(3, std::vector<Arc>{{0, 1}, {1, 2}, {0, 2}}));
  CHECK(dag_to_json(build_eedp_dag(g)).at("guard_skips") == 0);
}
