#include "eedp/runner.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <deque>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <thread>
#include <tuple>

#include <fmt/core.h>

#include "eedp/graph_io.hpp"

namespace eedp {

namespace {

struct WorkItem {
  const TestCase* test;
  Method method;
  const std::string* flattened;
};

auto order_key(const EvalRecord& r) {
  return std::tuple(r.method, r.test.graph, r.test.source, r.test.target, r.test.task);
}

// Completed records flow from the workers to the single writer.
class CompletionQueue {
 public:
  void push(EvalRecord r) {
    {
      std::lock_guard lock(mutex_);
      items_.push_back(std::move(r));
    }
    ready_.notify_one();
  }

  void close() {
    {
      std::lock_guard lock(mutex_);
      closed_ = true;
    }
    ready_.notify_all();
  }

  std::optional<EvalRecord> pop() {
    std::unique_lock lock(mutex_);
    ready_.wait(lock, [&] { return closed_ || !items_.empty(); });
    if (items_.empty()) return std::nullopt;
    EvalRecord r = std::move(items_.front());
    items_.pop_front();
    return r;
  }

 private:
  std::mutex mutex_;
  std::condition_variable ready_;
  std::deque<EvalRecord> items_;
  bool closed_ = false;
};

}  // namespace

ResultsFile load_results(const std::filesystem::path& path) {
  ResultsFile file;
  if (!std::filesystem::exists(path)) return file;
  const std::string text = read_text_file(path);
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    ++line_no;
    if (nl == std::string::npos) {
      file.truncated_tail = true;
      break;
    }
    const std::string_view line(text.data() + pos, nl - pos);
    if (!line.empty()) {
      try {
        file.records.push_back(record_from_json(nlohmann::json::parse(line)));
      } catch (const std::exception& e) {
        throw FormatError(fmt::format("{}:{}: {}", path.string(), line_no, e.what()), line_no);
      }
    }
    pos = nl + 1;
    file.valid_bytes = pos;
  }
  return file;
}

std::vector<EvalRecord> final_records(const std::vector<EvalRecord>& records) {
  std::map<std::string, const EvalRecord*> latest;
  for (const EvalRecord& r : records) latest[record_key(r.method, r.test)] = &r;
  std::vector<EvalRecord> out;
  out.reserve(latest.size());
  for (const auto& [key, r] : latest) out.push_back(*r);
  std::sort(out.begin(), out.end(),
            [](const EvalRecord& a, const EvalRecord& b) { return order_key(a) < order_key(b); });
  return out;
}

RunSummary run_benchmark(const std::vector<Graph>& graphs, const std::vector<TestCase>& cases,
                         const RunOptions& options, const Tokenizer& tokenizer, Client& client,
                         const std::filesystem::path& results) {
  if (options.concurrency == 0) throw std::invalid_argument("concurrency must be >= 1");
  options.flatten.validate();

  ResultsFile existing = load_results(results);
  if (existing.truncated_tail) std::filesystem::resize_file(results, existing.valid_bytes);
  std::set<std::string> done;
  for (const EvalRecord& r : final_records(existing.records)) {
    if (r.error == QueryError::None) done.insert(record_key(r.method, r.test));
  }

  RunSummary summary;
  std::map<std::pair<Method, std::size_t>, std::string> flattened;
  std::vector<WorkItem> work;
  for (Method method : options.methods) {
    for (const TestCase& c : cases) {
      if (std::find(options.tasks.begin(), options.tasks.end(), c.task) == options.tasks.end()) continue;
      if (c.graph >= graphs.size()) {
        throw std::out_of_range(fmt::format("case refers to graph {} of {}", c.graph, graphs.size()));
      }
      ++summary.planned;
      if (done.contains(record_key(method, c))) {
        ++summary.skipped;
        continue;
      }
      auto [it, inserted] = flattened.try_emplace({method, c.graph});
      if (inserted) it->second = flatten(graphs[c.graph], method, options.flatten, tokenizer).text;
      work.push_back({&c, method, &it->second});
    }
  }
  std::size_t limit = work.size();
  if (options.max_queries && options.max_queries < limit) {
    limit = options.max_queries;
    summary.stopped_early = true;
  }

  std::ofstream out(results, std::ios::app | std::ios::binary);
  if (!out) throw IoError("cannot open results file " + results.string());

  CompletionQueue queue;
  RateLimiter limiter(options.rpm);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < limit; i = next++) {
      const WorkItem& item = work[i];
      EvalRecord rec;
      rec.test = *item.test;
      rec.method = item.method;
      Query q{item.test, &graphs[item.test->graph], item.method, prompt_text(*item.flattened, *item.test)};
      rec.prompt_tokens = tokenizer.count(q.prompt);
      limiter.acquire();
      const auto start = std::chrono::steady_clock::now();
      try {
        rec.raw = client.complete(q);
        rec.parsed = parse_answer(rec.test.task, rec.raw);
        const Grade g = grade_answer(*q.graph, rec.test, rec.parsed);
        rec.correct = g.correct;
        rec.malformed = g.malformed;
      } catch (const ClientError& e) {
        rec.error = e.kind();
        rec.error_message = e.what();
      } catch (const std::exception& e) {
        rec.error = QueryError::Transport;
        rec.error_message = e.what();
      }
      rec.latency_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      queue.push(std::move(rec));
    }
  };

  std::thread writer([&] {
    while (auto rec = queue.pop()) {
      out << record_to_json(*rec).dump() << '\n';
      out.flush();
      ++summary.queried;
      summary.errors += rec->error != QueryError::None;
    }
  });
  std::vector<std::thread> workers;
  const std::size_t n_workers = std::min(options.concurrency, std::max<std::size_t>(limit, 1));
  for (std::size_t i = 0; i < n_workers; ++i) workers.emplace_back(worker);
  for (auto& t : workers) t.join();
  queue.close();
  writer.join();
  if (!out) throw IoError("write to results file failed: " + results.string());
  return summary;
}

}  // namespace eedp
