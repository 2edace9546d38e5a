#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <fmt/ranges.h>
#include <json.hpp>

#include "eedp/benchmark.hpp"
#include "eedp/compress.hpp"
#include "eedp/config.hpp"
#include "eedp/dag.hpp"
#include "eedp/flatten.hpp"
#include "eedp/graph_io.hpp"
#include "eedp/harness.hpp"
#include "eedp/paths.hpp"
#include "eedp/runner.hpp"
#include "eedp/tokenizer.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kOther = 1, kConfig = 2, kIo = 3, kEndpoint = 4 };

struct EndpointFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool g_json = false;

std::vector<eedp::Graph> load_dataset(const fs::path& path, std::string name) {
  if (!fs::is_directory(path)) return eedp::read_graph_file(path);
  if (name.empty()) {
    for (const auto& entry : fs::directory_iterator(path)) {
      const std::string file = entry.path().filename().string();
      if (file.size() > 6 && file.ends_with("_A.txt")) name = file.substr(0, file.size() - 6);
    }
    if (name.empty()) throw eedp::IoError("no <name>_A.txt file in " + path.string());
  }
  return eedp::load_tu_directory(path, name);
}

eedp::Graph pick_graph(const fs::path& file, std::size_t index) {
  auto graphs = eedp::read_graph_file(file);
  if (index >= graphs.size()) {
    throw eedp::ConfigError(fmt::format("--index {} but {} holds {} graph(s)", index, file.string(), graphs.size()));
  }
  return std::move(graphs[index]);
}

eedp::Method method_or_throw(const std::string& name) {
  const auto m = eedp::parse_method(name);
  if (!m) throw eedp::ConfigError(fmt::format("unknown method '{}'", name));
  return *m;
}

void emit(const std::string& text, const json& machine) {
  if (g_json) {
    std::cout << machine.dump(2) << '\n';
  } else {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  }
}

eedp::Report report_from(const fs::path& results) {
  return eedp::aggregate(eedp::final_records(eedp::load_results(results).records));
}

void write_report(const eedp::Report& report, const fs::path& dir) {
  fs::create_directories(dir);
  eedp::write_text_file(dir / "report.json", eedp::report_to_json(report).dump(2) + "\n");
  eedp::write_text_file(dir / "report.txt", eedp::report_table(report));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"EEDP graph flattening and edge-prediction benchmark tool"};
  app.require_subcommand(1);
  app.add_flag("--json", g_json, "Print machine-readable JSON on stdout");

  // flatten
  auto* flat_cmd = app.add_subcommand("flatten", "Render a graph with one flattening method");
  std::string flat_file, flat_method = "eedp", flat_out, flat_tokenizer = "heuristic", flat_vocab;
  std::size_t flat_index = 0, flat_walk = 5;
  std::uint64_t flat_seed = 0;
  bool flat_compress = true;
  flat_cmd->add_option("graph", flat_file, "Graph JSON file (object or array)")->required();
  flat_cmd->add_option("--method,-m", flat_method,
                       "eedp, eedp_no_adjlist, eedp_no_paths, eedp_no_adjlist_no_dagpaths, adj_matrix, "
                       "adj_list, edge_list, ego_graph, walk_seq, gml, graphml, natural")
      ->capture_default_str();
  flat_cmd->add_flag("--compress,!--no-compress", flat_compress, "Merge each endpoint pair's paths")
      ->capture_default_str();
  flat_cmd->add_option("--index", flat_index, "Graph index when the file holds a list")->capture_default_str();
  flat_cmd->add_option("--seed", flat_seed, "Seed for walk sequences")->capture_default_str();
  flat_cmd->add_option("--walk-length", flat_walk, "Nodes per walk")->capture_default_str();
  flat_cmd->add_option("--tokenizer", flat_tokenizer, "heuristic or bpe")->capture_default_str();
  flat_cmd->add_option("--vocab", flat_vocab, "tiktoken rank file for --tokenizer bpe");
  flat_cmd->add_option("--out,-o", flat_out, "Write <out>.txt and <out>.stats.json instead of stdout");

  // dag
  auto* dag_cmd = app.add_subcommand("dag", "Build the EEDP-DAG and list its endpoints");
  std::string dag_file;
  std::size_t dag_index = 0;
  eedp::NodeId dag_start = 0;
  dag_cmd->add_option("graph", dag_file, "Graph JSON file")->required();
  dag_cmd->add_option("--index", dag_index, "Graph index when the file holds a list")->capture_default_str();
  dag_cmd->add_option("--start", dag_start, "Start node")->capture_default_str();

  // paths
  auto* paths_cmd = app.add_subcommand("paths", "Extract end-to-end paths between DAG endpoints");
  std::string paths_file;
  std::size_t paths_index = 0;
  eedp::ExtractLimits paths_limits;
  paths_cmd->add_option("graph", paths_file, "Graph JSON file")->required();
  paths_cmd->add_option("--index", paths_index, "Graph index when the file holds a list")->capture_default_str();
  paths_cmd->add_option("--max-len", paths_limits.max_len, "Maximum arcs per path, 0 for none")->capture_default_str();
  paths_cmd->add_option("--max-per-pair", paths_limits.max_per_pair, "Path cap per endpoint pair")->capture_default_str();
  paths_cmd->add_option("--max-total", paths_limits.max_total, "Path cap per graph")->capture_default_str();

  // compress
  auto* comp_cmd = app.add_subcommand("compress", "Compress a set of paths sharing start and end");
  std::string comp_file;
  comp_cmd->add_option("paths", comp_file, "JSON array of node-id arrays, '-' for stdin")->required();

  // bench-build
  auto* build_cmd = app.add_subcommand("bench-build", "Sample hop-bucket test cases from a dataset");
  std::string build_dataset, build_name, build_out;
  std::uint64_t build_seed = 0;
  std::size_t build_per_bucket = 4, build_subsample = 0;
  build_cmd->add_option("--dataset,-d", build_dataset, "Graph JSON file or TU dataset directory")->required();
  build_cmd->add_option("--dataset-name", build_name, "TU file prefix, e.g. ZINC_test (default: detected)");
  build_cmd->add_option("--seed", build_seed, "Sampling seed")->capture_default_str();
  build_cmd->add_option("--per-bucket", build_per_bucket, "Pairs per hop bucket per graph")->capture_default_str();
  build_cmd->add_option("--subsample", build_subsample, "Keep this many graphs (seeded), 0 for all")->capture_default_str();
  build_cmd->add_option("--out,-o", build_out, "Output directory")->required();

  // bench-run
  auto* run_cmd = app.add_subcommand("bench-run", "Query a client on a benchmark and grade the answers");
  std::string run_config, run_bench, run_methods, run_tasks, run_client, run_out, run_tokenizer, run_vocab,
      run_transcript, run_base_url, run_model, run_dataset;
  std::uint64_t run_seed = 0;
  std::size_t run_concurrency = 4, run_max_queries = 0;
  double run_rpm = 0;
  run_cmd->add_option("--config,-c", run_config, "Flat JSON run config; flags override its keys");
  run_cmd->add_option("--benchmark,-b", run_bench, "Benchmark JSONL (manifest.json alongside)");
  run_cmd->add_option("--dataset", run_dataset, "Graph file instead of the manifest's");
  run_cmd->add_option("--methods", run_methods, "Comma-separated methods or 'all'");
  run_cmd->add_option("--tasks", run_tasks, "Comma-separated tasks: EP_CP,EP_DP");
  run_cmd->add_option("--client", run_client, "oracle, random, transcript or openai");
  run_cmd->add_option("--transcript", run_transcript, "Recorded responses for --client transcript");
  run_cmd->add_option("--base-url", run_base_url, "OpenAI-compatible endpoint base URL");
  run_cmd->add_option("--model", run_model, "Model name for --client openai");
  run_cmd->add_option("--seed", run_seed, "Seed for random answers and walks");
  run_cmd->add_option("--concurrency", run_concurrency, "Concurrent requests");
  run_cmd->add_option("--rpm", run_rpm, "Requests per minute, 0 for unlimited");
  run_cmd->add_option("--max-queries", run_max_queries, "Stop after this many new queries");
  run_cmd->add_option("--tokenizer", run_tokenizer, "heuristic or bpe");
  run_cmd->add_option("--vocab", run_vocab, "tiktoken rank file for --tokenizer bpe");
  run_cmd->add_option("--out,-o", run_out, "Output directory");

  // report
  auto* rep_cmd = app.add_subcommand("report", "Aggregate a results file into accuracy tables");
  std::string rep_results, rep_out;
  rep_cmd->add_option("results", rep_results, "results.jsonl from bench-run")->required();
  rep_cmd->add_option("--out,-o", rep_out, "Also write report.json and report.txt here");

  // gen-merged-like
  auto* gen_cmd = app.add_subcommand("gen-merged-like", "Generate sparse directed substitute graphs");
  std::size_t gen_n = 1000;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen_cmd->add_option("--n", gen_n, "Number of graphs")->capture_default_str();
  gen_cmd->add_option("--seed", gen_seed, "Generator seed")->capture_default_str();
  gen_cmd->add_option("--out,-o", gen_out, "Graph JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (flat_cmd->parsed()) {
      const eedp::Graph g = pick_graph(flat_file, flat_index);
      const eedp::Method method = method_or_throw(flat_method);
      eedp::FlattenOptions opts;
      opts.compress_paths = flat_compress;
      opts.seed = flat_seed;
      opts.walk_length = flat_walk;
      const auto tokenizer = eedp::make_tokenizer(flat_tokenizer, flat_vocab);
      const eedp::FlattenedGraph result = eedp::flatten(g, method, opts, *tokenizer);
      const json stats = eedp::stats_to_json(result, *tokenizer);
      if (!flat_out.empty()) {
        eedp::write_text_file(flat_out + ".txt", result.text + "\n");
        eedp::write_text_file(flat_out + ".stats.json", stats.dump(2) + "\n");
        emit(fmt::format("wrote {}.txt ({} tokens)", flat_out, result.token_count), stats);
      } else {
        emit(result.text, {{"text", result.text}, {"stats", stats}});
      }
    } else if (dag_cmd->parsed()) {
      const eedp::Graph g = pick_graph(dag_file, dag_index);
      const eedp::Dag dag = eedp::build_eedp_dag(g, dag_start);
      const eedp::EndpointSet ends = eedp::endpoints(dag);
      std::string text;
      for (const eedp::Arc& a : dag.arcs()) text += fmt::format("{} -> {}\n", a.head, a.tail);
      text += fmt::format("endpoints: {}\nguard_skips: {}\n", fmt::join(ends.endpoints, ", "), dag.guard_skips());
      json j = eedp::dag_to_json(dag);
      j["endpoints"] = ends.endpoints;
      emit(text, j);
    } else if (paths_cmd->parsed()) {
      const eedp::Graph g = pick_graph(paths_file, paths_index);
      const eedp::Dag dag = eedp::build_eedp_dag(g);
      const eedp::PathBundle bundle = eedp::extract_paths(g, eedp::endpoints(dag), paths_limits);
      std::string text;
      for (const auto& group : bundle.groups) {
        for (const auto& p : group.paths) text += eedp::render_path(p) + "\n";
      }
      if (bundle.overflow) text += "(truncated at the path cap)\n";
      emit(text, eedp::bundle_to_json(bundle));
    } else if (comp_cmd->parsed()) {
      const std::string raw = comp_file == "-" ? std::string(std::istreambuf_iterator<char>(std::cin), {})
                                               : eedp::read_text_file(comp_file);
      std::vector<eedp::Path> paths;
      try {
        paths = json::parse(raw).get<std::vector<eedp::Path>>();
      } catch (const json::exception& e) {
        throw eedp::FormatError(fmt::format("expected a JSON array of paths: {}", e.what()));
      }
      const eedp::CompressedPathTree tree = eedp::compress(paths);
      const std::string rendered = eedp::render(tree);
      emit(rendered, {{"rendered", rendered}, {"tree", eedp::tree_to_json(tree)}});
    } else if (build_cmd->parsed()) {
      std::vector<eedp::Graph> graphs = load_dataset(build_dataset, build_name);
      if (build_subsample) {
        std::vector<eedp::Graph> kept;
        for (std::size_t i : eedp::subsample_indices(graphs.size(), build_subsample, build_seed)) {
          kept.push_back(std::move(graphs[i]));
        }
        graphs = std::move(kept);
      }
      const fs::path out(build_out);
      fs::create_directories(out);
      const std::string name = build_name.empty() ? fs::path(build_dataset).filename().string() : build_name;
      const eedp::BenchmarkSet set = eedp::build_benchmark(name, graphs, build_seed, build_per_bucket);
      eedp::write_graph_list(graphs, out / "graphs.json");
      eedp::write_benchmark_jsonl(set, out / "benchmark.jsonl");
      const json manifest = eedp::benchmark_manifest(set, graphs, out / "graphs.json", out);
      eedp::write_text_file(out / "manifest.json", manifest.dump(2) + "\n");
      std::string text = fmt::format("{} graphs, {} cases\n", graphs.size(), set.cases.size());
      for (eedp::Task t : eedp::kAllTasks) {
        const auto counts = set.bucket_counts(t);
        text += fmt::format("{}: {}\n", eedp::task_name(t), fmt::join(counts, " / "));
      }
      emit(text, manifest);
    } else if (run_cmd->parsed()) {
      json overrides = json::object();
      auto set_if = [&](const char* flag, const char* key, const auto& value) {
        if (run_cmd->count(flag)) overrides[key] = value;
      };
      set_if("--benchmark", "benchmark", run_bench);
      set_if("--dataset", "dataset", run_dataset);
      set_if("--methods", "methods", run_methods);
      set_if("--tasks", "tasks", run_tasks);
      set_if("--client", "client", run_client);
      set_if("--transcript", "transcript", run_transcript);
      set_if("--base-url", "base_url", run_base_url);
      set_if("--model", "model", run_model);
      set_if("--seed", "seed", run_seed);
      set_if("--concurrency", "concurrency", run_concurrency);
      set_if("--rpm", "rpm", run_rpm);
      set_if("--max-queries", "max_queries", run_max_queries);
      set_if("--tokenizer", "tokenizer", run_tokenizer);
      set_if("--vocab", "vocab", run_vocab);
      set_if("--out", "out_dir", run_out);
      const eedp::RunConfig config = run_config.empty() ? eedp::parse_run_config(json::object(), overrides)
                                                        : eedp::load_run_config(run_config, overrides);
      if (config.benchmark.empty()) throw eedp::ConfigError("no benchmark given (--benchmark)");
      const fs::path bench(config.benchmark);
      std::vector<eedp::Graph> graphs;
      if (!config.dataset.empty()) {
        graphs = load_dataset(config.dataset, config.dataset_name);
      } else {
        const fs::path manifest_path = bench.parent_path() / "manifest.json";
        const json manifest = json::parse(eedp::read_text_file(manifest_path));
        const fs::path graph_file = bench.parent_path() / manifest.at("graphs").at("path").get<std::string>();
        if (eedp::sha256_file(graph_file) != manifest.at("graphs").at("sha256").get<std::string>()) {
          throw eedp::FormatError(graph_file.string() + " does not match the manifest hash");
        }
        graphs = eedp::read_graph_file(graph_file);
      }
      const auto cases = eedp::read_benchmark_jsonl(bench);
      const auto tokenizer = eedp::make_tokenizer(config.tokenizer, config.vocab);
      std::unique_ptr<eedp::Client> client;
      try {
        client = eedp::make_client(config);
      } catch (const eedp::ClientError& e) {
        throw EndpointFailure(e.what());
      }
      eedp::RunOptions options;
      options.methods = config.methods;
      options.tasks = config.tasks;
      options.flatten = config.flatten_options();
      options.concurrency = config.concurrency;
      options.rpm = config.rpm;
      options.max_queries = config.max_queries;
      const fs::path out(config.out_dir);
      fs::create_directories(out);
      eedp::write_text_file(out / "config.json", config.source.dump(2) + "\n");
      const eedp::RunSummary summary =
          eedp::run_benchmark(graphs, cases, options, *tokenizer, *client, out / "results.jsonl");
      const eedp::Report report = report_from(out / "results.jsonl");
      write_report(report, out);
      json j = eedp::report_to_json(report);
      j["run"] = {{"planned", summary.planned},
                  {"skipped", summary.skipped},
                  {"queried", summary.queried},
                  {"errors", summary.errors},
                  {"stopped_early", summary.stopped_early}};
      emit(fmt::format("{} planned, {} already done, {} queried, {} errors{}\n\n{}", summary.planned,
                       summary.skipped, summary.queried, summary.errors,
                       summary.stopped_early ? " (stopped at --max-queries)" : "", eedp::report_table(report)),
           j);
      if (summary.errors) {
        std::cerr << "error: " << summary.errors << " queries failed at the endpoint; rerun to retry them\n";
        return kEndpoint;
      }
    } else if (rep_cmd->parsed()) {
      if (!fs::exists(rep_results)) throw eedp::IoError("cannot open " + rep_results);
      const eedp::Report report = report_from(rep_results);
      if (!rep_out.empty()) write_report(report, rep_out);
      emit(eedp::report_table(report), eedp::report_to_json(report));
    } else if (gen_cmd->parsed()) {
      const auto graphs = eedp::generate_merged_like(gen_n, gen_seed);
      eedp::write_graph_list(graphs, gen_out);
      const eedp::DatasetStats s = eedp::dataset_stats(graphs);
      emit(fmt::format("{} graphs, mean nodes {:.2f}, mean arcs {:.2f}", s.graphs, s.mean_nodes, s.mean_arcs),
           {{"graphs", s.graphs}, {"mean_nodes", s.mean_nodes}, {"mean_arcs", s.mean_arcs}});
    }
  } catch (const eedp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kConfig;
  } catch (const eedp::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const eedp::FormatError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const json::exception& e) {
    std::cerr << "I/O error: malformed JSON: " << e.what() << '\n';
    return kIo;
  } catch (const EndpointFailure& e) {
    std::cerr << "endpoint error: " << e.what() << '\n';
    return kEndpoint;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOther;
  }
  return kOk;
}
