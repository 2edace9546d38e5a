#include <doctest.h>

#include "eedp/harness.hpp"

using namespace eedp;

namespace {

TestCase make_case(Task task, HopBucket bucket, NodeId s = 0, NodeId t = 3) {
  TestCase c;
  c.source = s;
  c.target = t;
  c.task = task;
  c.bucket = bucket;
  c.gold_cp = true;
  c.gold_dp = 2;
  return c;
}

EvalRecord record(Method m, Task task, HopBucket bucket, bool correct, std::size_t tokens) {
  EvalRecord r;
  r.method = m;
  r.test = make_case(task, bucket);
  r.correct = correct;
  r.prompt_tokens = tokens;
  return r;
}

}  // namespace

TEST_CASE("prompt text") {
  const std::string cp = prompt_text("{0: [1]}", make_case(Task::EpCp, HopBucket::H1, 0, 1));
  CHECK(cp.rfind("You are given a directed graph.\n{0: [1]}\n\n", 0) == 0);
  CHECK(cp.find("from node 0 to node 1") != std::string::npos);
  CHECK(cp.find("\"yes\" or \"no\"") != std::string::npos);
  const std::string dp = prompt_text("{0: [1]}", make_case(Task::EpDp, HopBucket::H1, 0, 1));
  CHECK(dp.find("-1") != std::string::npos);
  CHECK(dp.find("single integer") != std::string::npos);

  FlattenedGraph flat;
  flat.text = "{0: [1]}";
  const HeuristicTokenizer tok;
  const PromptRecord p = build_prompt(flat, make_case(Task::EpCp, HopBucket::H1), tok);
  CHECK(p.token_count == tok.count(p.text));
}

TEST_CASE("answer parsing") {
  CHECK(parse_answer(Task::EpCp, "Yes.").kind == ParsedAnswer::Yes);
  CHECK(parse_answer(Task::EpCp, "  NO, there is none").kind == ParsedAnswer::No);
  CHECK(parse_answer(Task::EpCp, "I cannot tell, but yes").kind == ParsedAnswer::Yes);
  CHECK(parse_answer(Task::EpCp, "nobody knows").kind == ParsedAnswer::Malformed);
  CHECK(parse_answer(Task::EpCp, "").kind == ParsedAnswer::Malformed);
  CHECK(parse_answer(Task::EpDp, "The length is 3.") == ParsedAnswer{ParsedAnswer::Integer, 3});
  CHECK(parse_answer(Task::EpDp, "-1") == ParsedAnswer{ParsedAnswer::Integer, -1});
  CHECK(parse_answer(Task::EpDp, "node3 is 4 away").value == 4);
  CHECK(parse_answer(Task::EpDp, "no path").kind == ParsedAnswer::Malformed);
  for (const ParsedAnswer& a : {ParsedAnswer{ParsedAnswer::Yes, 0}, ParsedAnswer{ParsedAnswer::No, 0},
                                ParsedAnswer{ParsedAnswer::Integer, -7}, ParsedAnswer{}}) {
    CHECK(ParsedAnswer::from_str(a.str()) == a);
  }
}

TEST_CASE("grading parsed answers") {
  const Graph g = Graph::from_arcs(4, std::vector<Arc>{{0, 1}, {0, 2}, {1, 3}, {2, 3}}, false);
  CHECK(grade_answer(g, make_case(Task::EpCp, HopBucket::H2), parse_answer(Task::EpCp, "yes")).correct);
  const Grade bad = grade_answer(g, make_case(Task::EpCp, HopBucket::H2), parse_answer(Task::EpCp, "maybe"));
  CHECK_FALSE(bad.correct);
  CHECK(bad.malformed);
  CHECK(grade_answer(g, make_case(Task::EpDp, HopBucket::H2), parse_answer(Task::EpDp, "2")).correct);
}

TEST_CASE("record json round trip") {
  EvalRecord r = record(Method::GraphMl, Task::EpDp, HopBucket::H3, false, 40);
  r.raw = "It is \"3\"";
  r.parsed = {ParsedAnswer::Integer, 3};
  r.error = QueryError::Timeout;
  r.error_message = "deadline";
  r.latency_ms = 12.5;
  const EvalRecord back = record_from_json(record_to_json(r));
  CHECK(back.test == r.test);
  CHECK(back.method == r.method);
  CHECK(back.raw == r.raw);
  CHECK(back.parsed == r.parsed);
  CHECK(back.error == QueryError::Timeout);
  CHECK(back.error_message == "deadline");
  CHECK(back.prompt_tokens == 40);
  CHECK(record_key(Method::Eedp, r.test) == "eedp/0/0/3/EP_DP");
  for (QueryError e : {QueryError::None, QueryError::Auth, QueryError::Timeout, QueryError::MalformedResponse,
                       QueryError::Transport}) {
    CHECK(parse_query_error(query_error_name(e)) == e);
  }
}

TEST_CASE("aggregation by hand") {
  const std::vector<EvalRecord> records{
      record(Method::Eedp, Task::EpCp, HopBucket::H1, true, 10),
      record(Method::Eedp, Task::EpCp, HopBucket::H1, false, 20),
      record(Method::Eedp, Task::EpCp, HopBucket::H5Plus, true, 30),
      record(Method::AdjList, Task::EpDp, HopBucket::H2, true, 8),
  };
  const Report rep = aggregate(records);
  REQUIRE(rep.rows.size() == 2);
  const ReportRow& eedp = rep.rows[0];
  CHECK(eedp.method == Method::Eedp);
  CHECK(eedp.buckets[0].accuracy() == doctest::Approx(50.0));
  CHECK(eedp.buckets[1].total == 0);
  CHECK(eedp.buckets[3].accuracy() == doctest::Approx(100.0));
  CHECK(eedp.total.correct == 2);
  CHECK(eedp.total.total == 3);
  CHECK(rep.mean_tokens.at(Method::Eedp) == doctest::Approx(20.0));
  CHECK(rep.mean_tokens.at(Method::AdjList) == doctest::Approx(8.0));
  CHECK(rep.record_count == 4);

  const std::string table = report_table(rep);
  CHECK(table.find("   1-hop   2-hop   3-hop  \xE2\x89\xA5" "5-hop   Total") != std::string::npos);
  CHECK(table.find("66.67") != std::string::npos);
  CHECK(table.find("Mean prompt tokens") != std::string::npos);
  CHECK(report_table(Report{}) == "No records.\n");
  const auto j = report_to_json(rep);
  CHECK(j.at("rows").size() == 2);
}
