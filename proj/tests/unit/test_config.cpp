#include <doctest.h>

#include <cstdlib>

#include "eedp/config.hpp"
#include "eedp/graph_io.hpp"
#include "temp_dir.hpp"

using namespace eedp;
using nlohmann::json;

TEST_CASE("defaults and overrides") {
  const RunConfig c = parse_run_config(json::object());
  CHECK(c.methods == std::vector<Method>{Method::Eedp});
  CHECK(c.client == "oracle");
  CHECK(c.compress);

  const RunConfig o = parse_run_config(json{{"methods", "eedp,adj_list"}, {"seed", 3}},
                                       json{{"seed", 9}, {"tasks", json::array({"EP_DP"})}});
  CHECK(o.methods == std::vector<Method>{Method::Eedp, Method::AdjList});
  CHECK(o.seed == 9);
  CHECK(o.tasks == std::vector<Task>{Task::EpDp});
  CHECK(parse_run_config(json{{"methods", "all"}}).methods.size() == std::size(kAllMethods));
  CHECK(parse_run_config(json{{"compress", false}}).flatten_options().compress_paths == false);
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(parse_run_config(json{{"colour", "red"}}), ConfigError);
  CHECK_THROWS_AS(parse_run_config(json{{"methods", "eedp,bogus"}}), ConfigError);
  CHECK_THROWS_AS(parse_run_config(json{{"client", "psychic"}}), ConfigError);
  CHECK_THROWS_AS(parse_run_config(json{{"concurrency", 0}}), ConfigError);
  CHECK_THROWS_AS(parse_run_config(json{{"seed", "x"}}), ConfigError);
  CHECK_THROWS_AS(parse_run_config(json{{"temperature", 0.5}}), ConfigError);
  CHECK(parse_run_config(json{{"max_retries", 0}, {"timeout_s", 2}}).endpoint.max_retries == 0);
}

TEST_CASE("environment interpolation") {
  setenv("EEDP_CFG_TEST", "abc", 1);
  unsetenv("EEDP_CFG_UNSET");
  CHECK(interpolate_env("x-${EEDP_CFG_TEST}-y") == "x-abc-y");
  CHECK(interpolate_env("plain") == "plain");
  CHECK_THROWS_AS(interpolate_env("${EEDP_CFG_UNSET}"), ConfigError);
  const RunConfig c = parse_run_config(json{{"out_dir", "/tmp/${EEDP_CFG_TEST}"}});
  CHECK(c.out_dir == "/tmp/abc");
  CHECK(c.source.at("out_dir") == "/tmp/${EEDP_CFG_TEST}");
}

TEST_CASE("clients from config") {
  CHECK(make_client(parse_run_config(json::object()))->name() == "oracle");
  CHECK(make_client(parse_run_config(json{{"client", "random"}}))->name() == "random");
  CHECK_THROWS_AS(make_client(parse_run_config(json{{"client", "transcript"}})), ConfigError);
  CHECK_THROWS_AS(make_client(parse_run_config(json{{"client", "openai"}})), ConfigError);
}

TEST_CASE("config files") {
  testing_support::TempDir dir;
  write_text_file(dir / "c.json", R"({"client": "random", "seed": 4})");
  const RunConfig c = load_run_config(dir / "c.json", json{{"seed", 5}});
  CHECK(c.client == "random");
  CHECK(c.seed == 5);
  write_text_file(dir / "bad.json", "{");
  CHECK_THROWS_AS(load_run_config(dir / "bad.json"), ConfigError);
  CHECK_THROWS_AS(load_run_config(dir / "none.json"), IoError);
}
