#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "eedp/benchmark.hpp"
#include "eedp/client.hpp"
#include "eedp/flatten.hpp"

namespace eedp {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One flat JSON object. String values may reference environment variables
/// as ${NAME}; an unset variable is an error. Unknown keys are rejected.
struct RunConfig {
  std::string dataset;       // JSON graph file or TU directory
  std::string dataset_name;  // TU file prefix, e.g. "ZINC_test"
  std::string benchmark;     // benchmark JSONL
  std::vector<Method> methods{Method::Eedp};
  std::vector<Task> tasks{Task::EpCp, Task::EpDp};
  std::uint64_t seed = 0;
  std::size_t per_bucket = 4;
  bool compress = true;
  std::size_t max_path_len = 0;
  std::size_t max_paths_per_pair = 10'000;
  std::size_t max_paths_total = 100'000;
  std::size_t walk_length = 5;
  std::string tokenizer = "heuristic";
  std::string vocab;
  std::string client = "oracle";  // oracle | random | transcript | openai
  std::string transcript;
  EndpointConfig endpoint{};
  std::size_t concurrency = 4;
  double rpm = 0;
  std::size_t max_queries = 0;
  std::string out_dir = "out";

  /// The merged document before interpolation, kept for provenance.
  nlohmann::json source = nlohmann::json::object();

  FlattenOptions flatten_options() const;
};

/// Replaces every ${NAME} with the environment value.
std::string interpolate_env(const std::string& text);

/// Keys in `overrides` replace those in `doc`; the result is validated.
RunConfig parse_run_config(const nlohmann::json& doc,
                           const nlohmann::json& overrides = nlohmann::json::object());
RunConfig load_run_config(const std::filesystem::path& path,
                          const nlohmann::json& overrides = nlohmann::json::object());

/// Builds the configured client. Throws ConfigError on bad settings.
std::unique_ptr<Client> make_client(const RunConfig& config);

}  // namespace eedp
