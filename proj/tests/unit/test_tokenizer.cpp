#include <doctest.h>

#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "eedp/tokenizer.hpp"

using namespace eedp;

TEST_CASE("heuristic rounds up") {
  const HeuristicTokenizer tok;
  CHECK(tok.count("") == 0);
  CHECK(tok.count("a") == 1);
  CHECK(tok.count(std::string(400, 'x')) == 100);
  CHECK(tok.count(std::string(401, 'x')) == 101);
  CHECK_FALSE(tok.exact());
}

TEST_CASE("factory") {
  CHECK(make_tokenizer("heuristic")->name() == "heuristic-bytes/4");
  CHECK_THROWS_AS(make_tokenizer("bpe", "/nonexistent/vocab.tiktoken"), std::runtime_error);
  CHECK_THROWS_AS(make_tokenizer("wordpiece"), std::invalid_argument);
}

TEST_CASE("BPE matches the reference encoder fixture") {
  const auto vocab = default_bpe_vocab();
  if (!vocab) {
    MESSAGE("EEDP_BPE_VOCAB not set; BPE fixture comparison skipped");
    return;
  }
  const auto tok = BpeTokenizer::load(*vocab);
  CHECK(tok->vocab_size() > 100'000);
  std::ifstream in(EEDP_BPE_FIXTURE);
  REQUIRE(in);
  const auto fixture = nlohmann::json::parse(in);
  REQUIRE(fixture.size() >= 10);
  for (const auto& entry : fixture) {
    const std::string text = entry.at("text");
    const auto expected = entry.at("tokens").get<std::vector<std::uint32_t>>();
    INFO(text);
    CHECK(tok->encode(text) == expected);
    CHECK(tok->count(text) == expected.size());
  }
}
