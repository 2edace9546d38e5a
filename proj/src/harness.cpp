#include "eedp/harness.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>

#include <fmt/core.h>

namespace eedp {

namespace {

constexpr std::string_view kPreamble = "You are given a directed graph.\n";

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Display width of UTF-8 text, counting code points.
std::size_t display_width(std::string_view s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

std::string pad_left(std::string_view s, std::size_t width) {
  const std::size_t w = display_width(s);
  return std::string(w < width ? width - w : 0, ' ') + std::string(s);
}

std::string pad_right(std::string_view s, std::size_t width) {
  const std::size_t w = display_width(s);
  return std::string(s) + std::string(w < width ? width - w : 0, ' ');
}

}  // namespace

std::string prompt_text(std::string_view flattened, const TestCase& c) {
  std::string out(kPreamble);
  out += flattened;
  out += "\n\n";
  if (c.task == Task::EpCp) {
    out += fmt::format("Question: Is there a directed path from node {} to node {}?\n", c.source,
                       c.target);
    out += "Answer only \"yes\" or \"no\".";
  } else {
    out += fmt::format(
        "Question: What is the length, in edges, of a directed path from node {} to node {}? "
        "If there is no such path, answer -1.\n",
        c.source, c.target);
    out += "Answer with a single integer only.";
  }
  return out;
}

PromptRecord build_prompt(const FlattenedGraph& flat, const TestCase& c, const Tokenizer& tokenizer) {
  PromptRecord rec;
  rec.method = flat.method;
  rec.text = prompt_text(flat.text, c);
  rec.token_count = tokenizer.count(rec.text);
  return rec;
}

std::string ParsedAnswer::str() const {
  switch (kind) {
    case Yes: return "yes";
    case No: return "no";
    case Integer: return std::to_string(value);
    case Malformed: break;
  }
  return "MALFORMED";
}

ParsedAnswer ParsedAnswer::from_str(std::string_view s) {
  if (s == "yes") return {Yes, 0};
  if (s == "no") return {No, 0};
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec == std::errc{} && ptr == s.data() + s.size() && !s.empty()) return {Integer, v};
  return {Malformed, 0};
}

ParsedAnswer parse_answer(Task task, std::string_view raw) {
  const std::size_t n = raw.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && is_word_char(raw[i - 1])) continue;
    if (task == Task::EpCp) {
      for (auto [word, kind] : {std::pair{std::string_view("yes"), ParsedAnswer::Yes},
                                std::pair{std::string_view("no"), ParsedAnswer::No}}) {
        if (i + word.size() > n) continue;
        bool match = true;
        for (std::size_t k = 0; k < word.size() && match; ++k) {
          match = std::tolower(static_cast<unsigned char>(raw[i + k])) == word[k];
        }
        if (match && (i + word.size() == n || !is_word_char(raw[i + word.size()]))) {
          return {kind, 0};
        }
      }
    } else {
      std::size_t start = i;
      if (raw[i] == '-' && i + 1 < n && std::isdigit(static_cast<unsigned char>(raw[i + 1]))) {
        ++i;
      } else if (!std::isdigit(static_cast<unsigned char>(raw[i]))) {
        continue;
      }
      std::size_t end = i;
      while (end < n && std::isdigit(static_cast<unsigned char>(raw[end]))) ++end;
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(raw.data() + start, raw.data() + end, v);
      if (ec != std::errc{}) return {};
      return {ParsedAnswer::Integer, v};
    }
  }
  return {};
}

Grade grade_answer(const Graph& g, const TestCase& c, const ParsedAnswer& answer) {
  if (c.task == Task::EpCp) {
    if (answer.kind != ParsedAnswer::Yes && answer.kind != ParsedAnswer::No) return {false, true};
    return {grade_cp(c, answer.kind == ParsedAnswer::Yes), false};
  }
  if (answer.kind != ParsedAnswer::Integer) return {false, true};
  const DpGrade dp = grade_dp(g, c, answer.value);
  return {dp.correct, dp.malformed};
}

std::string_view query_error_name(QueryError e) {
  switch (e) {
    case QueryError::None: return "";
    case QueryError::Auth: return "auth";
    case QueryError::Timeout: return "timeout";
    case QueryError::MalformedResponse: return "malformed_response";
    case QueryError::Transport: return "transport";
  }
  return "";
}

QueryError parse_query_error(std::string_view name) {
  for (QueryError e : {QueryError::None, QueryError::Auth, QueryError::Timeout,
                       QueryError::MalformedResponse, QueryError::Transport}) {
    if (query_error_name(e) == name) return e;
  }
  throw std::invalid_argument(fmt::format("unknown error class '{}'", name));
}

std::string record_key(Method method, const TestCase& c) {
  return fmt::format("{}/{}/{}/{}/{}", method_name(method), c.graph, c.source, c.target,
                     task_name(c.task));
}

nlohmann::json record_to_json(const EvalRecord& r) {
  nlohmann::json j = case_to_json(r.test);
  j["method"] = method_name(r.method);
  j["raw"] = r.raw;
  j["parsed"] = r.parsed.str();
  j["correct"] = r.correct;
  j["malformed"] = r.malformed;
  j["error"] = query_error_name(r.error);
  if (r.error != QueryError::None) j["error_message"] = r.error_message;
  j["prompt_tokens"] = r.prompt_tokens;
  j["latency_ms"] = r.latency_ms;
  return j;
}

EvalRecord record_from_json(const nlohmann::json& j) {
  EvalRecord r;
  r.test = case_from_json(j);
  try {
    const auto method = parse_method(j.at("method").get<std::string>());
    if (!method) throw std::invalid_argument("unknown method in result record");
    r.method = *method;
    r.raw = j.at("raw").get<std::string>();
    r.parsed = ParsedAnswer::from_str(j.at("parsed").get<std::string>());
    r.correct = j.at("correct").get<bool>();
    r.malformed = j.at("malformed").get<bool>();
    r.error = parse_query_error(j.at("error").get<std::string>());
    r.error_message = j.value("error_message", "");
    r.prompt_tokens = j.at("prompt_tokens").get<std::size_t>();
    r.latency_ms = j.value("latency_ms", 0.0);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(fmt::format("bad result record: {}", e.what()));
  }
  return r;
}

Report aggregate(const std::vector<EvalRecord>& records) {
  Report report;
  report.record_count = records.size();
  std::map<std::pair<Method, Task>, ReportRow> rows;
  std::map<Method, std::pair<double, std::size_t>> tokens;
  for (const EvalRecord& r : records) {
    ReportRow& row = rows[{r.method, r.test.task}];
    row.method = r.method;
    row.task = r.test.task;
    Tally& cell = row.buckets[static_cast<std::size_t>(r.test.bucket)];
    ++cell.total;
    ++row.total.total;
    if (r.correct) {
      ++cell.correct;
      ++row.total.correct;
    }
    row.malformed += r.malformed;
    row.errors += r.error != QueryError::None;
    auto& [sum, count] = tokens[r.method];
    sum += static_cast<double>(r.prompt_tokens);
    ++count;
  }
  for (auto& [key, row] : rows) report.rows.push_back(row);
  for (const auto& [method, acc] : tokens) {
    report.mean_tokens[method] = acc.first / static_cast<double>(acc.second);
  }
  return report;
}

nlohmann::json report_to_json(const Report& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const ReportRow& row : report.rows) {
    nlohmann::json buckets = nlohmann::json::object();
    for (HopBucket b : kAllBuckets) {
      const Tally& t = row.buckets[static_cast<std::size_t>(b)];
      buckets[std::string(bucket_name(b))] = {
          {"correct", t.correct}, {"total", t.total}, {"accuracy", t.accuracy()}};
    }
    rows.push_back({
        {"method", method_name(row.method)},
        {"task", task_name(row.task)},
        {"buckets", buckets},
        {"total", {{"correct", row.total.correct}, {"total", row.total.total}, {"accuracy", row.total.accuracy()}}},
        {"malformed", row.malformed},
        {"errors", row.errors},
    });
  }
  nlohmann::json tokens = nlohmann::json::object();
  for (const auto& [method, mean] : report.mean_tokens) tokens[std::string(method_name(method))] = mean;
  return {{"records", report.record_count}, {"rows", rows}, {"mean_prompt_tokens", tokens}};
}

std::string report_table(const Report& report) {
  if (report.empty()) return "No records.\n";
  std::size_t label_width = 6;
  for (const ReportRow& row : report.rows) {
    label_width = std::max(label_width, display_width(method_label(row.method)));
  }
  constexpr std::size_t kCol = 8;
  std::string out;
  for (Task task : kAllTasks) {
    const bool any = std::any_of(report.rows.begin(), report.rows.end(),
                                 [&](const ReportRow& r) { return r.task == task; });
    if (!any) continue;
    if (!out.empty()) out += '\n';
    out += fmt::format("{} accuracy (%)\n", task_name(task));
    out += pad_right("Method", label_width);
    for (HopBucket b : kAllBuckets) out += pad_left(bucket_label(b), kCol);
    out += pad_left("Total", kCol) + '\n';
    for (const ReportRow& row : report.rows) {
      if (row.task != task) continue;
      out += pad_right(method_label(row.method), label_width);
      for (const Tally& t : row.buckets) {
        out += pad_left(t.total ? fmt::format("{:.2f}", t.accuracy()) : "-", kCol);
      }
      out += pad_left(fmt::format("{:.2f}", row.total.accuracy()), kCol) + '\n';
    }
  }
  out += '\n' + pad_right("Cases", label_width + 6) + pad_left("n", kCol) + pad_left("malformed", 11) +
         pad_left("errors", kCol) + '\n';
  for (const ReportRow& row : report.rows) {
    out += pad_right(method_label(row.method), label_width) + ' ' + std::string(task_name(row.task));
    out += pad_left(std::to_string(row.total.total), kCol) + pad_left(std::to_string(row.malformed), 11);
    out += pad_left(std::to_string(row.errors), kCol) + '\n';
  }
  out += "\nMean prompt tokens\n";
  for (const auto& [method, mean] : report.mean_tokens) {
    out += pad_right(method_label(method), label_width) + pad_left(fmt::format("{:.2f}", mean), 12) + '\n';
  }
  return out;
}

}  // namespace eedp
