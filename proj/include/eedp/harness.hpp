#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "eedp/benchmark.hpp"
#include "eedp/flatten.hpp"
#include "eedp/tokenizer.hpp"

namespace eedp {

inline constexpr std::string_view kPromptTemplateVersion = "v1";

struct PromptRecord {
  Method method = Method::Eedp;
  std::string text;
  std::size_t token_count = 0;
};

/// Preamble, flattened graph, question about (source, target), answer format.
/// EP_CP prompts end with the yes/no instruction; EP_DP prompts state the
/// -1 convention for unreachable targets.
std::string prompt_text(std::string_view flattened, const TestCase& c);
PromptRecord build_prompt(const FlattenedGraph& flat, const TestCase& c, const Tokenizer& tokenizer);

struct ParsedAnswer {
  enum Kind { Yes, No, Integer, Malformed } kind = Malformed;
  std::int64_t value = 0;

  /// "yes", "no", the integer, or "MALFORMED".
  std::string str() const;
  static ParsedAnswer from_str(std::string_view s);
  friend bool operator==(const ParsedAnswer&, const ParsedAnswer&) = default;
};

/// EP_CP: first whole-word "yes" or "no", any case. EP_DP: first integer
/// token, a leading minus included. Nothing found gives Malformed.
ParsedAnswer parse_answer(Task task, std::string_view raw);

struct Grade {
  bool correct = false;
  bool malformed = false;
};
Grade grade_answer(const Graph& g, const TestCase& c, const ParsedAnswer& answer);

/// Endpoint failure classes recorded instead of an answer.
enum class QueryError { None, Auth, Timeout, MalformedResponse, Transport };
std::string_view query_error_name(QueryError e);
QueryError parse_query_error(std::string_view name);

struct EvalRecord {
  TestCase test;
  Method method = Method::Eedp;
  std::string raw;
  ParsedAnswer parsed;
  bool correct = false;
  bool malformed = false;
  QueryError error = QueryError::None;
  std::string error_message;
  std::size_t prompt_tokens = 0;
  double latency_ms = 0;
};

/// Identifies a (method, case) pair across runs.
std::string record_key(Method method, const TestCase& c);

nlohmann::json record_to_json(const EvalRecord& r);
EvalRecord record_from_json(const nlohmann::json& j);

struct Tally {
  std::size_t correct = 0;
  std::size_t total = 0;
  double accuracy() const { return total ? 100.0 * static_cast<double>(correct) / static_cast<double>(total) : 0.0; }
};

struct ReportRow {
  Method method = Method::Eedp;
  Task task = Task::EpCp;
  std::array<Tally, 4> buckets{};
  Tally total;
  std::size_t malformed = 0;
  std::size_t errors = 0;
};

struct Report {
  /// Ordered by method, then task, in enum order.
  std::vector<ReportRow> rows;
  /// Mean prompt tokens over every record of the method.
  std::map<Method, double> mean_tokens;
  std::size_t record_count = 0;

  bool empty() const { return rows.empty(); }
};

/// Records are grouped by (method, task, bucket); Total pools the buckets.
Report aggregate(const std::vector<EvalRecord>& records);
nlohmann::json report_to_json(const Report& report);
/// Accuracy tables (one per task, columns "1-hop 2-hop 3-hop ≥5-hop Total")
/// followed by the mean-token table and malformed/error counts.
std::string report_table(const Report& report);

}  // namespace eedp
