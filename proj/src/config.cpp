#include "eedp/config.hpp"

#include <cstdlib>
#include <functional>
#include <map>

#include <fmt/core.h>

#include "eedp/graph_io.hpp"

namespace eedp {

namespace {

using Setter = std::function<void(RunConfig&, const nlohmann::json&)>;

std::string as_string(const nlohmann::json& v) {
  if (!v.is_string()) throw ConfigError("expected a string");
  return interpolate_env(v.get<std::string>());
}

std::size_t as_count(const nlohmann::json& v) {
  if (v.is_string()) {
    const std::string s = interpolate_env(v.get<std::string>());
    char* end = nullptr;
    const auto n = std::strtoull(s.c_str(), &end, 10);
    if (s.empty() || *end) throw ConfigError("expected a non-negative integer");
    return n;
  }
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw ConfigError("expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

double as_number(const nlohmann::json& v) {
  if (!v.is_number()) throw ConfigError("expected a number");
  return v.get<double>();
}

bool as_bool(const nlohmann::json& v) {
  if (!v.is_boolean()) throw ConfigError("expected true or false");
  return v.get<bool>();
}

std::vector<std::string> as_list(const nlohmann::json& v) {
  std::vector<std::string> out;
  if (v.is_string()) {
    // Comma-separated shorthand.
    std::string s = as_string(v);
    std::size_t pos = 0;
    while (pos <= s.size()) {
      const auto comma = s.find(',', pos);
      const auto end = comma == std::string::npos ? s.size() : comma;
      if (end > pos) out.push_back(s.substr(pos, end - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return out;
  }
  if (!v.is_array()) throw ConfigError("expected a list of strings");
  for (const auto& item : v) out.push_back(as_string(item));
  return out;
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table{
      {"dataset", [](RunConfig& c, const auto& v) { c.dataset = as_string(v); }},
      {"dataset_name", [](RunConfig& c, const auto& v) { c.dataset_name = as_string(v); }},
      {"benchmark", [](RunConfig& c, const auto& v) { c.benchmark = as_string(v); }},
      {"methods",
       [](RunConfig& c, const auto& v) {
         c.methods.clear();
         for (const auto& name : as_list(v)) {
           if (name == "all") {
             c.methods.assign(std::begin(kAllMethods), std::end(kAllMethods));
             continue;
           }
           const auto m = parse_method(name);
           if (!m) throw ConfigError(fmt::format("unknown method '{}'", name));
           c.methods.push_back(*m);
         }
         if (c.methods.empty()) throw ConfigError("no methods selected");
       }},
      {"tasks",
       [](RunConfig& c, const auto& v) {
         c.tasks.clear();
         for (const auto& name : as_list(v)) {
           const auto t = parse_task(name);
           if (!t) throw ConfigError(fmt::format("unknown task '{}'", name));
           c.tasks.push_back(*t);
         }
         if (c.tasks.empty()) throw ConfigError("no tasks selected");
       }},
      {"seed", [](RunConfig& c, const auto& v) { c.seed = as_count(v); }},
      {"per_bucket", [](RunConfig& c, const auto& v) { c.per_bucket = as_count(v); }},
      {"compress", [](RunConfig& c, const auto& v) { c.compress = as_bool(v); }},
      {"max_path_len", [](RunConfig& c, const auto& v) { c.max_path_len = as_count(v); }},
      {"max_paths_per_pair", [](RunConfig& c, const auto& v) { c.max_paths_per_pair = as_count(v); }},
      {"max_paths_total", [](RunConfig& c, const auto& v) { c.max_paths_total = as_count(v); }},
      {"walk_length", [](RunConfig& c, const auto& v) { c.walk_length = as_count(v); }},
      {"tokenizer", [](RunConfig& c, const auto& v) { c.tokenizer = as_string(v); }},
      {"vocab", [](RunConfig& c, const auto& v) { c.vocab = as_string(v); }},
      {"client", [](RunConfig& c, const auto& v) { c.client = as_string(v); }},
      {"transcript", [](RunConfig& c, const auto& v) { c.transcript = as_string(v); }},
      {"base_url", [](RunConfig& c, const auto& v) { c.endpoint.base_url = as_string(v); }},
      {"model", [](RunConfig& c, const auto& v) { c.endpoint.model = as_string(v); }},
      {"api_key_env", [](RunConfig& c, const auto& v) { c.endpoint.api_key_env = as_string(v); }},
      {"timeout_s", [](RunConfig& c, const auto& v) { c.endpoint.timeout_s = as_number(v); }},
      {"max_retries",
       [](RunConfig& c, const auto& v) { c.endpoint.max_retries = static_cast<int>(as_count(v)); }},
      {"max_tokens",
       [](RunConfig& c, const auto& v) { c.endpoint.max_tokens = static_cast<int>(as_count(v)); }},
      {"concurrency", [](RunConfig& c, const auto& v) { c.concurrency = as_count(v); }},
      {"rpm", [](RunConfig& c, const auto& v) { c.rpm = as_number(v); }},
      {"max_queries", [](RunConfig& c, const auto& v) { c.max_queries = as_count(v); }},
      {"out_dir", [](RunConfig& c, const auto& v) { c.out_dir = as_string(v); }},
  };
  return table;
}

}  // namespace

FlattenOptions RunConfig::flatten_options() const {
  FlattenOptions opts;
  opts.compress_paths = compress;
  opts.seed = seed;
  opts.walk_length = walk_length;
  opts.limits.max_len = max_path_len;
  opts.limits.max_per_pair = max_paths_per_pair;
  opts.limits.max_total = max_paths_total;
  return opts;
}

std::string interpolate_env(const std::string& text) {
  std::string out;
  std::size_t pos = 0;
  while (true) {
    const auto open = text.find("${", pos);
    if (open == std::string::npos) break;
    const auto close = text.find('}', open + 2);
    if (close == std::string::npos) throw ConfigError("unterminated ${ in '" + text + "'");
    const std::string name = text.substr(open + 2, close - open - 2);
    const char* value = std::getenv(name.c_str());
    if (!value) throw ConfigError(fmt::format("environment variable {} is not set", name));
    out += text.substr(pos, open - pos);
    out += value;
    pos = close + 1;
  }
  out += text.substr(pos);
  return out;
}

RunConfig parse_run_config(const nlohmann::json& doc, const nlohmann::json& overrides) {
  if (!doc.is_object() || !overrides.is_object()) throw ConfigError("config must be a JSON object");
  nlohmann::json merged = doc;
  for (const auto& [key, value] : overrides.items()) merged[key] = value;
  RunConfig config;
  const auto& table = setters();
  for (const auto& [key, value] : merged.items()) {
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError(fmt::format("unknown config key '{}'", key));
    try {
      it->second(config, value);
    } catch (const ConfigError& e) {
      throw ConfigError(fmt::format("config key '{}': {}", key, e.what()));
    }
  }
  if (config.concurrency == 0) throw ConfigError("concurrency must be >= 1");
  if (config.per_bucket == 0) throw ConfigError("per_bucket must be >= 1");
  if (config.rpm < 0) throw ConfigError("rpm must be >= 0");
  if (config.tokenizer != "heuristic" && config.tokenizer != "bpe") {
    throw ConfigError(fmt::format("unknown tokenizer '{}'", config.tokenizer));
  }
  if (config.client == "transcript" && config.transcript.empty()) {
    throw ConfigError("client 'transcript' needs a transcript file");
  }
  if (config.client == "openai" && (config.endpoint.base_url.empty() || config.endpoint.model.empty())) {
    throw ConfigError("client 'openai' needs base_url and model");
  }
  if (config.client != "oracle" && config.client != "random" && config.client != "transcript" &&
      config.client != "openai") {
    throw ConfigError(fmt::format("unknown client '{}'", config.client));
  }
  try {
    config.flatten_options().validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  config.source = std::move(merged);
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path, const nlohmann::json& overrides) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(fmt::format("{}: {}", path.string(), e.what()));
  }
  return parse_run_config(doc, overrides);
}

std::unique_ptr<Client> make_client(const RunConfig& config) {
  if (config.client == "oracle") return std::make_unique<OracleClient>();
  if (config.client == "random") return std::make_unique<RandomClient>(config.seed);
  if (config.client == "transcript") return std::make_unique<TranscriptClient>(config.transcript);
  if (config.client == "openai") return std::make_unique<OpenAiClient>(config.endpoint);
  throw ConfigError(fmt::format("unknown client '{}'", config.client));
}

}  // namespace eedp
