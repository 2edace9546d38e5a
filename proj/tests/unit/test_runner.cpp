#include <doctest.h>

#include <atomic>

#include "eedp/graph_io.hpp"
#include "eedp/runner.hpp"
#include "temp_dir.hpp"

using namespace eedp;

namespace {

struct Fixture {
  std::vector<Graph> graphs = generate_merged_like(12, 4);
  std::vector<TestCase> cases = build_benchmark("m", graphs, 1).cases;
  HeuristicTokenizer tok;

  RunOptions options(std::size_t concurrency) const {
    RunOptions o;
    o.methods = {Method::Eedp, Method::AdjList};
    o.concurrency = concurrency;
    return o;
  }
};

// Fails every query whose key hash is odd on the first pass only.
class FlakyClient final : public Client {
 public:
  std::string complete(const Query& q) override {
    const std::string key = record_key(q.method, *q.test);
    if (fail_ && key.size() % 2) throw ClientError(QueryError::Timeout, "flaky");
    return inner_.complete(q);
  }
  std::string name() const override { return "flaky"; }
  void heal() { fail_ = false; }

 private:
  std::atomic<bool> fail_{true};
  OracleClient inner_;
};

std::string report_of(const std::filesystem::path& results) {
  return report_table(aggregate(final_records(load_results(results).records)));
}

}  // namespace

TEST_CASE("full run with the oracle") {
  Fixture f;
  testing_support::TempDir dir;
  OracleClient oracle;
  const RunSummary s = run_benchmark(f.graphs, f.cases, f.options(3), f.tok, oracle, dir / "r.jsonl");
  CHECK(s.planned == 2 * f.cases.size());
  CHECK(s.queried == s.planned);
  CHECK(s.errors == 0);
  const auto records = final_records(load_results(dir / "r.jsonl").records);
  REQUIRE(records.size() == s.planned);
  for (const EvalRecord& r : records) REQUIRE(r.correct);
  for (std::size_t i = 1; i < records.size(); ++i) {
    REQUIRE(record_key(records[i - 1].method, records[i - 1].test) != record_key(records[i].method, records[i].test));
  }
}

TEST_CASE("interrupted and resumed run matches an uninterrupted one") {
  Fixture f;
  testing_support::TempDir dir;
  OracleClient oracle;
  run_benchmark(f.graphs, f.cases, f.options(2), f.tok, oracle, dir / "full.jsonl");

  RunOptions partial = f.options(2);
  partial.max_queries = 17;
  const RunSummary first = run_benchmark(f.graphs, f.cases, partial, f.tok, oracle, dir / "resumed.jsonl");
  CHECK(first.stopped_early);
  CHECK(first.queried == 17);
  const RunSummary second =
      run_benchmark(f.graphs, f.cases, f.options(2), f.tok, oracle, dir / "resumed.jsonl");
  CHECK(second.skipped == 17);
  CHECK(second.queried == second.planned - 17);
  CHECK(load_results(dir / "resumed.jsonl").records.size() == second.planned);
  CHECK(report_of(dir / "resumed.jsonl") == report_of(dir / "full.jsonl"));
}

TEST_CASE("truncated tail is dropped and requeried") {
  Fixture f;
  testing_support::TempDir dir;
  OracleClient oracle;
  RunOptions partial = f.options(1);
  partial.max_queries = 5;
  run_benchmark(f.graphs, f.cases, partial, f.tok, oracle, dir / "r.jsonl");
  std::string text = read_text_file(dir / "r.jsonl");
  text += R"({"schema":1,"graph":0,"src")";
  write_text_file(dir / "r.jsonl", text);

  const ResultsFile loaded = load_results(dir / "r.jsonl");
  CHECK(loaded.truncated_tail);
  CHECK(loaded.records.size() == 5);
  CHECK(loaded.valid_bytes == text.size() - std::string(R"({"schema":1,"graph":0,"src")").size());

  const RunSummary s = run_benchmark(f.graphs, f.cases, f.options(1), f.tok, oracle, dir / "r.jsonl");
  CHECK(s.skipped == 5);
  const ResultsFile after = load_results(dir / "r.jsonl");
  CHECK_FALSE(after.truncated_tail);
  CHECK(after.records.size() == s.planned);

  write_text_file(dir / "bad.jsonl", "{oops}\n" + read_text_file(dir / "r.jsonl"));
  CHECK_THROWS_AS(load_results(dir / "bad.jsonl"), FormatError);
  CHECK(load_results(dir / "absent.jsonl").records.empty());
}

TEST_CASE("endpoint errors are recorded and retried on resume") {
  Fixture f;
  testing_support::TempDir dir;
  FlakyClient flaky;
  const RunSummary first = run_benchmark(f.graphs, f.cases, f.options(2), f.tok, flaky, dir / "r.jsonl");
  CHECK(first.errors > 0);
  CHECK(first.errors < first.planned);
  const auto failed = final_records(load_results(dir / "r.jsonl").records);
  for (const EvalRecord& r : failed) {
    if (r.error != QueryError::None) CHECK_FALSE(r.correct);
  }
  flaky.heal();
  const RunSummary second = run_benchmark(f.graphs, f.cases, f.options(2), f.tok, flaky, dir / "r.jsonl");
  CHECK(second.queried == first.errors);
  CHECK(second.errors == 0);
  for (const EvalRecord& r : final_records(load_results(dir / "r.jsonl").records)) REQUIRE(r.correct);
}

TEST_CASE("concurrency does not change the report") {
  Fixture f;
  testing_support::TempDir dir;
  RandomClient random(11);
  run_benchmark(f.graphs, f.cases, f.options(1), f.tok, random, dir / "one.jsonl");
  run_benchmark(f.graphs, f.cases, f.options(4), f.tok, random, dir / "four.jsonl");
  CHECK(report_of(dir / "one.jsonl") == report_of(dir / "four.jsonl"));
}
