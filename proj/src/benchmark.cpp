#include "eedp/benchmark.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include <fmt/core.h>
#include <openssl/evp.h>

#include "eedp/graph_io.hpp"
#include "eedp/oracles.hpp"
#include "eedp/rng.hpp"

namespace eedp {

namespace {

constexpr std::array<std::string_view, 4> kBucketNames{"H1", "H2", "H3", "H5plus"};
constexpr std::array<std::string_view, 4> kBucketLabels{"1-hop", "2-hop", "3-hop", "≥5-hop"};

std::size_t bucket_index(HopBucket b) { return static_cast<std::size_t>(b); }

std::size_t binomial(Rng& rng, std::size_t trials, double p) {
  std::size_t k = 0;
  for (std::size_t i = 0; i < trials; ++i) k += rng.bernoulli(p);
  return k;
}

}  // namespace

std::string_view bucket_name(HopBucket b) { return kBucketNames[bucket_index(b)]; }
std::string_view bucket_label(HopBucket b) { return kBucketLabels[bucket_index(b)]; }

std::optional<HopBucket> parse_bucket(std::string_view name) {
  for (HopBucket b : kAllBuckets) {
    if (bucket_name(b) == name) return b;
  }
  return std::nullopt;
}

std::optional<HopBucket> bucket_for_distance(std::size_t d) {
  switch (d) {
    case 1: return HopBucket::H1;
    case 2: return HopBucket::H2;
    case 3: return HopBucket::H3;
    case 0:
    case 4: return std::nullopt;
    default: return d == kUnreachable ? std::nullopt : std::optional{HopBucket::H5Plus};
  }
}

std::string_view task_name(Task t) { return t == Task::EpCp ? "EP_CP" : "EP_DP"; }

std::optional<Task> parse_task(std::string_view name) {
  if (name == "EP_CP") return Task::EpCp;
  if (name == "EP_DP") return Task::EpDp;
  return std::nullopt;
}

std::array<std::size_t, 4> BenchmarkSet::bucket_counts(Task task) const {
  std::array<std::size_t, 4> counts{};
  for (const TestCase& c : cases) {
    if (c.task == task) ++counts[bucket_index(c.bucket)];
  }
  return counts;
}

double BenchmarkSet::cp_yes_rate() const {
  std::size_t yes = 0, total = 0;
  for (const TestCase& c : cases) {
    if (c.task != Task::EpCp) continue;
    ++total;
    yes += c.gold_cp;
  }
  return total ? static_cast<double>(yes) / static_cast<double>(total) : 0.0;
}

std::vector<TestCase> sample_cases(const Graph& g, std::size_t graph_index, std::uint64_t seed,
                                   std::size_t per_bucket) {
  if (g.empty()) throw std::invalid_argument("sample_cases: empty graph");
  const auto n = static_cast<NodeId>(g.node_count());
  std::array<std::vector<std::pair<NodeId, NodeId>>, 4> candidates;
  std::vector<std::vector<std::size_t>> directed(n);
  for (NodeId u = 0; u < n; ++u) {
    const auto undirected = bfs_distances(g, u, false);
    directed[u] = bfs_distances(g, u, true);
    for (NodeId v = 0; v < n; ++v) {
      if (u == v) continue;
      if (auto b = bucket_for_distance(undirected[v])) candidates[bucket_index(*b)].emplace_back(u, v);
    }
  }

  Rng rng(mix_seed(seed, graph_index));
  std::vector<TestCase> out;
  for (HopBucket b : kAllBuckets) {
    auto& pool = candidates[bucket_index(b)];
    const std::size_t take = std::min(per_bucket, pool.size());
    for (std::size_t i = 0; i < take; ++i) {
      std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
    }
    std::sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(take));
    for (std::size_t i = 0; i < take; ++i) {
      const auto [u, v] = pool[i];
      const std::size_t d = directed[u][v];
      TestCase c;
      c.graph = graph_index;
      c.source = u;
      c.target = v;
      c.bucket = b;
      c.gold_cp = d != kUnreachable;
      c.gold_dp = c.gold_cp ? static_cast<std::int64_t>(d) : -1;
      for (Task t : kAllTasks) {
        c.task = t;
        out.push_back(c);
      }
    }
  }
  return out;
}

BenchmarkSet build_benchmark(std::string dataset, const std::vector<Graph>& graphs,
                             std::uint64_t seed, std::size_t per_bucket) {
  BenchmarkSet set;
  set.dataset = std::move(dataset);
  set.seed = seed;
  set.per_bucket = per_bucket;
  set.graph_count = graphs.size();
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (graphs[i].empty()) continue;
    auto cases = sample_cases(graphs[i], i, seed, per_bucket);
    set.cases.insert(set.cases.end(), cases.begin(), cases.end());
  }
  return set;
}

std::vector<std::size_t> subsample_indices(std::size_t total, std::size_t k, std::uint64_t seed) {
  std::vector<std::size_t> idx(total);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (k >= total) return idx;
  Rng rng(seed);
  for (std::size_t i = 0; i < k; ++i) std::swap(idx[i], idx[i + rng.below(total - i)]);
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::vector<Graph> generate_merged_like(std::size_t n_graphs, std::uint64_t seed) {
  if (n_graphs == 0) throw std::invalid_argument("generate_merged_like: n_graphs must be >= 1");
  constexpr double kKeepTreeArc = 0.93;
  constexpr double kExtraArcRate = 0.06;
  constexpr double kReverseExtra = 0.15;
  std::vector<Graph> graphs;
  graphs.reserve(n_graphs);
  for (std::size_t gi = 0; gi < n_graphs; ++gi) {
    Rng rng(mix_seed(seed, gi));
    const std::size_t n = 6 + binomial(rng, 15, 0.477);
    std::vector<Arc> arcs;
    std::vector<std::size_t> weight(n, 1);
    std::size_t weight_sum = 1;
    for (NodeId v = 1; v < n; ++v) {
      std::uint64_t pick = rng.below(weight_sum);
      NodeId parent = 0;
      while (pick >= weight[parent]) pick -= weight[parent++];
      if (rng.bernoulli(kKeepTreeArc)) arcs.push_back({parent, v});
      ++weight[parent];
      weight_sum += 2;  // parent gained a child, v joins with weight 1
    }
    const std::size_t extra = binomial(rng, n, kExtraArcRate);
    for (std::size_t e = 0; e < extra; ++e) {
      auto u = static_cast<NodeId>(rng.below(n));
      auto v = static_cast<NodeId>(rng.below(n - 1));
      if (v >= u) ++v;
      if (u > v) std::swap(u, v);
      Arc a = rng.bernoulli(kReverseExtra) ? Arc{v, u} : Arc{u, v};
      const bool present = std::any_of(arcs.begin(), arcs.end(), [&](const Arc& x) {
        return x == a || x == a.reversed();
      });
      if (!present) arcs.push_back(a);
    }
    graphs.push_back(Graph::from_arcs(n, arcs, false));
  }
  return graphs;
}

DatasetStats dataset_stats(const std::vector<Graph>& graphs) {
  DatasetStats s;
  s.graphs = graphs.size();
  if (graphs.empty()) return s;
  double nodes = 0, edges = 0, arcs = 0;
  for (const Graph& g : graphs) {
    nodes += static_cast<double>(g.node_count());
    edges += static_cast<double>(g.edge_count());
    arcs += static_cast<double>(g.arc_count());
  }
  const auto count = static_cast<double>(graphs.size());
  s.mean_nodes = nodes / count;
  s.mean_edges = edges / count;
  s.mean_arcs = arcs / count;
  return s;
}

bool grade_cp(const TestCase& c, bool answer) { return answer == c.gold_cp; }

DpGrade grade_dp(const Graph& g, const TestCase& c, std::int64_t answer) {
  if (answer < -1) return {false, true};
  if (answer == -1) return {c.gold_dp == -1, false};
  if (c.gold_dp == -1 || answer == 0) return {false, false};
  return {simple_path_of_length_exists(g, c.source, c.target, static_cast<std::size_t>(answer)),
          false};
}

nlohmann::json case_to_json(const TestCase& c) {
  return {
      {"schema", kBenchmarkSchema},
      {"graph", c.graph},
      {"src", c.source},
      {"dst", c.target},
      {"bucket", bucket_name(c.bucket)},
      {"task", task_name(c.task)},
      {"gold_cp", c.gold_cp},
      {"gold_dp", c.gold_dp},
  };
}

TestCase case_from_json(const nlohmann::json& j) {
  try {
    if (j.at("schema").get<int>() != kBenchmarkSchema) {
      throw std::invalid_argument(fmt::format("unsupported benchmark schema {}", j.at("schema").dump()));
    }
    TestCase c;
    c.graph = j.at("graph").get<std::size_t>();
    c.source = j.at("src").get<NodeId>();
    c.target = j.at("dst").get<NodeId>();
    const auto bucket = parse_bucket(j.at("bucket").get<std::string>());
    const auto task = parse_task(j.at("task").get<std::string>());
    if (!bucket || !task) throw std::invalid_argument("unknown bucket or task");
    c.bucket = *bucket;
    c.task = *task;
    c.gold_cp = j.at("gold_cp").get<bool>();
    c.gold_dp = j.at("gold_dp").get<std::int64_t>();
    if (c.source == c.target) throw std::invalid_argument("case with source == target");
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(fmt::format("bad benchmark case: {}", e.what()));
  }
}

void write_benchmark_jsonl(const BenchmarkSet& set, const std::filesystem::path& path) {
  std::string text;
  for (const TestCase& c : set.cases) {
    text += case_to_json(c).dump();
    text += '\n';
  }
  write_text_file(path, text);
}

std::vector<TestCase> read_benchmark_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<TestCase> cases;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      cases.push_back(case_from_json(nlohmann::json::parse(line)));
    } catch (const std::exception& e) {
      throw FormatError(fmt::format("{}:{}: {}", path.string(), line_no, e.what()), line_no);
    }
  }
  return cases;
}

nlohmann::json benchmark_manifest(const BenchmarkSet& set, const std::vector<Graph>& graphs,
                                  const std::filesystem::path& graph_file,
                                  const std::filesystem::path& manifest_dir) {
  const DatasetStats stats = dataset_stats(graphs);
  nlohmann::json counts = nlohmann::json::object();
  for (Task t : kAllTasks) {
    const auto c = set.bucket_counts(t);
    nlohmann::json row = nlohmann::json::object();
    for (HopBucket b : kAllBuckets) row[std::string(bucket_name(b))] = c[bucket_index(b)];
    counts[std::string(task_name(t))] = row;
  }
  return {
      {"schema", kBenchmarkSchema},
      {"dataset", set.dataset},
      {"seed", set.seed},
      {"per_bucket", set.per_bucket},
      {"graphs",
       {{"path", std::filesystem::relative(graph_file, manifest_dir).generic_string()},
        {"sha256", sha256_file(graph_file)},
        {"count", stats.graphs},
        {"mean_nodes", stats.mean_nodes},
        {"mean_edges", stats.mean_edges},
        {"mean_arcs", stats.mean_arcs}}},
      {"case_counts", counts},
      {"total_cases", set.cases.size()},
      {"cp_yes_rate", set.cp_yes_rate()},
  };
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr)) {
    throw std::runtime_error("sha256 failed");
  }
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

std::string sha256_file(const std::filesystem::path& path) { return sha256_hex(read_text_file(path)); }

}  // namespace eedp
