#include <doctest.h>

#include "eedp/compress.hpp"
#include "eedp/paths.hpp"
#include "reference.hpp"

using namespace eedp;

namespace {

std::set<Path> as_set(const std::vector<Path>& v) { return {v.begin(), v.end()}; }

std::size_t uncompressed_length(const std::vector<Path>& paths) {
  std::size_t n = 0;
  for (const Path& p : paths) n += render_path(p).size() + 1;
  return n - 1;
}

void check_lossless(const std::vector<Path>& paths) {
  const CompressedPathTree tree = compress(paths);
  const auto back = expand(tree);
  REQUIRE(as_set(back) == as_set(paths));
  REQUIRE(back.size() == as_set(paths).size());
  const std::string text = render(tree);
  REQUIRE(parse_compressed(text) == tree);
  REQUIRE(text.size() <= uncompressed_length(paths));
}

}  // namespace

TEST_CASE("diamond renders with one branch") {
  const std::vector<Path> paths{{0, 1, 3}, {0, 2, 3}};
  const CompressedPathTree tree = compress(paths);
  CHECK(render(tree) == "0 -> (1 | 2) -> 3");
  CHECK(tree.branch_count() == 1);
  CHECK(tree.start() == 0);
  CHECK(tree.end() == 3);
  check_lossless(paths);
}

TEST_CASE("single path has no branches") {
  const std::vector<Path> paths{{4, 2, 7}};
  CHECK(render(compress(paths)) == "4 -> 2 -> 7");
  check_lossless(paths);
}

TEST_CASE("crossing alternatives are not falsely merged") {
  // Naive position-wise merging would also denote 0 -> 1 -> 1 -> 3.
  check_lossless({{0, 1, 2, 3}, {0, 2, 1, 3}});
  // Shared middle node without a product structure.
  check_lossless({{0, 1, 3, 4, 6}, {0, 2, 3, 5, 6}});
  // A true product does split at the shared node.
  const std::vector<Path> product{{0, 1, 3, 4, 6}, {0, 2, 3, 5, 6}, {0, 1, 3, 5, 6}, {0, 2, 3, 4, 6}};
  const CompressedPathTree tree = compress(product);
  CHECK(render(tree) == "0 -> (1 | 2) -> 3 -> (4 | 5) -> 6");
  check_lossless(product);
}

TEST_CASE("direct alternative") {
  const std::vector<Path> paths{{0, 3}, {0, 1, 3}};
  const std::string text = render(compress(paths));
  CHECK(text.find(kEmptyAlternative) != std::string::npos);
  check_lossless(paths);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(compress(std::vector<Path>{}), std::invalid_argument);
  CHECK_THROWS_AS(compress(std::vector<Path>{{}}), std::invalid_argument);
  CHECK_THROWS_AS(compress(std::vector<Path>{{0, 1}, {0, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(compress(std::vector<Path>{{0, 1}, {1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(CompressedPathTree({Branch{{{1}, {2}}}}), std::invalid_argument);
  CHECK_THROWS_AS(CompressedPathTree({SharedNode{0}, Branch{{{1}}}, SharedNode{3}}), std::invalid_argument);
  CHECK_THROWS_AS(parse_compressed("0 -> (1 | 2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_compressed("0 -> -> 3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_compressed(""), std::invalid_argument);
}

TEST_CASE("json form") {
  const auto j = tree_to_json(compress(std::vector<Path>{{0, 1, 3}, {0, 2, 3}}));
  CHECK(j.dump() == R"({"segments":[{"node":0},{"branch":[[1],[2]]},{"node":3}]})");
}

TEST_CASE("random path sets from real graphs are compressed losslessly") {
  std::size_t groups = 0;
  for (const Graph& g : ref::structural_corpus(300, 41)) {
    const PathBundle b = extract_paths(g, endpoints(build_eedp_dag(g)), {0, 2'000, 20'000});
    for (const PathGroup& grp : b.groups) {
      check_lossless(grp.paths);
      ++groups;
    }
  }
  CHECK(groups > 300);
}

TEST_CASE("random subsets of path sets") {
  eedp::Rng rng(7);
  for (const Graph& g : ref::small_corpus(200, 42)) {
    const PathBundle b = extract_paths(g, endpoints(build_eedp_dag(g)));
    for (const PathGroup& grp : b.groups) {
      std::vector<Path> subset;
      for (const Path& p : grp.paths)
        if (rng.bernoulli(0.5)) subset.push_back(p);
      if (!subset.empty()) check_lossless(subset);
    }
  }
}
