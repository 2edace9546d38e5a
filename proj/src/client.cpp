#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "eedp/client.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <thread>

#include <fmt/core.h>
#include <httplib.h>
#include <json.hpp>

#include "eedp/graph_io.hpp"
#include "eedp/rng.hpp"

namespace eedp {

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::string OracleClient::complete(const Query& q) {
  const TestCase& c = *q.test;
  if (c.task == Task::EpCp) return c.gold_cp ? "yes" : "no";
  return std::to_string(c.gold_dp);
}

std::string RandomClient::complete(const Query& q) {
  const std::string key = record_key(q.method, *q.test);
  Rng rng(mix_seed(seed_, fnv1a(key)));
  if (q.test->task == Task::EpCp) return rng.bernoulli(0.5) ? "yes" : "no";
  const auto n = static_cast<std::int64_t>(q.graph->node_count());
  return std::to_string(static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(n + 2))) - 1);
}

TranscriptClient::TranscriptClient(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open transcript " + path.string());
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    responses_[j.at("key").get<std::string>()] = j.at("response").get<std::string>();
  }
}

std::string TranscriptClient::complete(const Query& q) {
  const std::string key = record_key(q.method, *q.test);
  const auto it = responses_.find(key);
  if (it == responses_.end()) {
    throw ClientError(QueryError::Transport, "no transcript entry for " + key);
  }
  return it->second;
}

OpenAiClient::OpenAiClient(EndpointConfig config) : config_(std::move(config)) {
  if (config_.base_url.empty() || config_.model.empty()) {
    throw std::invalid_argument("endpoint needs base_url and model");
  }
  if (!config_.api_key_env.empty()) {
    const char* key = std::getenv(config_.api_key_env.c_str());
    if (!key || !*key) {
      throw ClientError(QueryError::Auth,
                        fmt::format("environment variable {} is not set", config_.api_key_env));
    }
    api_key_ = key;
  }
  // Split "scheme://host[:port][/prefix]".
  const auto scheme_end = config_.base_url.find("://");
  if (scheme_end == std::string::npos) {
    throw std::invalid_argument("base_url must start with http:// or https://");
  }
  const auto path_start = config_.base_url.find('/', scheme_end + 3);
  host_ = config_.base_url.substr(0, path_start);
  path_prefix_ = path_start == std::string::npos ? "" : config_.base_url.substr(path_start);
  while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
}

std::string OpenAiClient::complete(const Query& q) {
  const nlohmann::json body = {
      {"model", config_.model},
      {"messages", {{{"role", "user"}, {"content", q.prompt}}}},
      {"temperature", 0},
      {"n", 1},
      {"max_tokens", config_.max_tokens},
  };
  const std::string payload = body.dump();
  httplib::Headers headers;
  if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

  const auto timeout = std::chrono::duration<double>(config_.timeout_s);
  double backoff = config_.backoff_initial_s;
  std::string last_failure;
  QueryError last_kind = QueryError::Transport;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::duration<double>(backoff));
      backoff = std::min(backoff * 2, config_.backoff_max_s);
    }
    httplib::Client http(host_);
    http.set_connection_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
    http.set_read_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
    http.set_write_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
    auto res = http.Post(path_prefix_ + "/chat/completions", headers, payload, "application/json");
    if (!res) {
      const auto err = res.error();
      last_kind = err == httplib::Error::Read || err == httplib::Error::ConnectionTimeout
                      ? QueryError::Timeout
                      : QueryError::Transport;
      last_failure = httplib::to_string(err);
      continue;
    }
    if (res->status == 401 || res->status == 403) {
      throw ClientError(QueryError::Auth, fmt::format("HTTP {}: {}", res->status, res->body));
    }
    if (res->status == 429 || res->status >= 500) {
      last_kind = QueryError::Timeout;
      last_failure = fmt::format("HTTP {}", res->status);
      continue;
    }
    if (res->status != 200) {
      throw ClientError(QueryError::Transport, fmt::format("HTTP {}: {}", res->status, res->body));
    }
    try {
      const auto doc = nlohmann::json::parse(res->body);
      return doc.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw ClientError(QueryError::MalformedResponse, fmt::format("unexpected response body: {}", e.what()));
    }
  }
  throw ClientError(last_kind, fmt::format("gave up after {} attempts: {}", config_.max_retries + 1,
                                           last_failure));
}

RateLimiter::RateLimiter(double rpm) {
  if (rpm < 0) throw std::invalid_argument("rpm must be >= 0");
  if (rpm > 0) {
    interval_ = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
        std::chrono::duration<double>(60.0 / rpm));
  }
}

void RateLimiter::acquire() {
  if (interval_ == std::chrono::steady_clock::duration::zero()) return;
  std::chrono::steady_clock::time_point slot;
  {
    std::lock_guard lock(mutex_);
    const auto now = std::chrono::steady_clock::now();
    slot = std::max(now, next_);
    next_ = slot + interval_;
  }
  std::this_thread::sleep_until(slot);
}

}  // namespace eedp
