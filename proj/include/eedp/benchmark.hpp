#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "eedp/graph.hpp"

namespace eedp {

inline constexpr int kBenchmarkSchema = 1;

enum class HopBucket { H1, H2, H3, H5Plus };
inline constexpr std::array<HopBucket, 4> kAllBuckets{HopBucket::H1, HopBucket::H2, HopBucket::H3,
                                                      HopBucket::H5Plus};

enum class Task { EpCp, EpDp };
inline constexpr std::array<Task, 2> kAllTasks{Task::EpCp, Task::EpDp};

/// "H1", "H2", "H3", "H5plus"
std::string_view bucket_name(HopBucket b);
/// Report column heading: "1-hop" ... "≥5-hop".
std::string_view bucket_label(HopBucket b);
std::optional<HopBucket> parse_bucket(std::string_view name);
/// Distance 4 and 0 have no bucket.
std::optional<HopBucket> bucket_for_distance(std::size_t d);

/// "EP_CP" / "EP_DP"
std::string_view task_name(Task t);
std::optional<Task> parse_task(std::string_view name);

struct TestCase {
  std::size_t graph = 0;
  NodeId source = 0;
  NodeId target = 0;
  HopBucket bucket = HopBucket::H1;
  Task task = Task::EpCp;
  bool gold_cp = false;
  /// Directed shortest distance, -1 when unreachable.
  std::int64_t gold_dp = -1;

  friend bool operator==(const TestCase&, const TestCase&) = default;
};

struct BenchmarkSet {
  std::string dataset;
  std::uint64_t seed = 0;
  std::size_t per_bucket = 4;
  std::size_t graph_count = 0;
  std::vector<TestCase> cases;

  /// Number of cases of `task` in each bucket, in kAllBuckets order.
  std::array<std::size_t, 4> bucket_counts(Task task) const;
  /// Fraction of EP_CP cases whose gold label is yes.
  double cp_yes_rate() const;
};

/// Samples up to `per_bucket` ordered pairs per hop bucket, uniformly
/// without replacement among pairs at that undirected distance, and emits an
/// EP_CP and an EP_DP case for each. Output is ordered by bucket, pair, task.
/// The draw depends only on (seed, graph_index).
std::vector<TestCase> sample_cases(const Graph& g, std::size_t graph_index, std::uint64_t seed,
                                   std::size_t per_bucket = 4);

BenchmarkSet build_benchmark(std::string dataset, const std::vector<Graph>& graphs,
                             std::uint64_t seed, std::size_t per_bucket = 4);

/// `k` distinct indices from [0, total), ascending. k >= total returns all.
std::vector<std::size_t> subsample_indices(std::size_t total, std::size_t k, std::uint64_t seed);

/// Sparse directed graphs with roughly 13.2 nodes and 12.1 arcs on average:
/// a preferential-attachment tree oriented away from older nodes, thinned,
/// plus a few extra arcs.
std::vector<Graph> generate_merged_like(std::size_t n_graphs, std::uint64_t seed);

struct DatasetStats {
  std::size_t graphs = 0;
  double mean_nodes = 0;
  /// Edges as counted by the source format: undirected edges once.
  double mean_edges = 0;
  double mean_arcs = 0;
};
DatasetStats dataset_stats(const std::vector<Graph>& graphs);

bool grade_cp(const TestCase& c, bool answer);

struct DpGrade {
  bool correct = false;
  bool malformed = false;
};
/// -1 is correct only for unreachable pairs; k >= 1 is correct when some
/// simple path of k arcs exists; anything below -1 is malformed.
DpGrade grade_dp(const Graph& g, const TestCase& c, std::int64_t answer);

nlohmann::json case_to_json(const TestCase& c);
/// Throws std::invalid_argument on missing fields or schema mismatch.
TestCase case_from_json(const nlohmann::json& j);

void write_benchmark_jsonl(const BenchmarkSet& set, const std::filesystem::path& path);
std::vector<TestCase> read_benchmark_jsonl(const std::filesystem::path& path);

/// Manifest referencing the graph file by path relative to the manifest
/// and its sha256.
nlohmann::json benchmark_manifest(const BenchmarkSet& set, const std::vector<Graph>& graphs,
                                  const std::filesystem::path& graph_file,
                                  const std::filesystem::path& manifest_dir);

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

}  // namespace eedp
