#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <vector>

#include "eedp/benchmark.hpp"
#include "eedp/client.hpp"
#include "eedp/flatten.hpp"
#include "eedp/harness.hpp"
#include "eedp/tokenizer.hpp"

namespace eedp {

struct RunOptions {
  std::vector<Method> methods{Method::Eedp};
  std::vector<Task> tasks{Task::EpCp, Task::EpDp};
  FlattenOptions flatten{};
  std::size_t concurrency = 4;
  double rpm = 0;
  /// Stop after issuing this many new queries; 0 means no limit.
  std::size_t max_queries = 0;
};

struct RunSummary {
  std::size_t planned = 0;
  std::size_t skipped = 0;
  std::size_t queried = 0;
  std::size_t errors = 0;
  bool stopped_early = false;
};

struct ResultsFile {
  std::vector<EvalRecord> records;
  /// Bytes up to the end of the last complete line.
  std::uintmax_t valid_bytes = 0;
  bool truncated_tail = false;
};

/// Reads an append-only results file. A missing file is empty; a partial
/// last line (interrupted write) is ignored and reported; any other bad line
/// throws FormatError.
ResultsFile load_results(const std::filesystem::path& path);

/// Latest record per key, ordered by method, graph, source, target, task.
std::vector<EvalRecord> final_records(const std::vector<EvalRecord>& records);

/// Queries every (method, case) pair that has no successful record in
/// `results` yet and appends the outcomes. Records that failed with an
/// endpoint error are retried. Up to `concurrency` queries run at once; a
/// single writer appends lines in completion order.
RunSummary run_benchmark(const std::vector<Graph>& graphs, const std::vector<TestCase>& cases,
                         const RunOptions& options, const Tokenizer& tokenizer, Client& client,
                         const std::filesystem::path& results);

}  // namespace eedp
