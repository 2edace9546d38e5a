#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "eedp/benchmark.hpp"
#include "eedp/harness.hpp"

namespace eedp {

class ClientError : public std::runtime_error {
 public:
  ClientError(QueryError kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  QueryError kind() const noexcept { return kind_; }

 private:
  QueryError kind_;
};

struct Query {
  const TestCase* test = nullptr;
  const Graph* graph = nullptr;
  Method method = Method::Eedp;
  std::string prompt;
};

/// Produces raw model text for a prompt. Implementations must be safe to
/// call from several threads. Failures throw ClientError.
class Client {
 public:
  virtual ~Client() = default;
  virtual std::string complete(const Query& q) = 0;
  virtual std::string name() const = 0;
};

/// Answers from the gold labels.
class OracleClient final : public Client {
 public:
  std::string complete(const Query& q) override;
  std::string name() const override { return "oracle"; }
};

/// EP_CP: yes or no with equal probability. EP_DP: an integer uniform in
/// [-1, node_count]. The draw depends only on the seed and the record key.
class RandomClient final : public Client {
 public:
  explicit RandomClient(std::uint64_t seed) : seed_(seed) {}
  std::string complete(const Query& q) override;
  std::string name() const override { return "random"; }

 private:
  std::uint64_t seed_;
};

/// Replays responses recorded as JSONL lines {"key": ..., "response": ...}.
class TranscriptClient final : public Client {
 public:
  explicit TranscriptClient(const std::filesystem::path& path);
  std::string complete(const Query& q) override;
  std::string name() const override { return "transcript"; }

 private:
  std::unordered_map<std::string, std::string> responses_;
};

struct EndpointConfig {
  /// e.g. "https://api.openai.com/v1"; "/chat/completions" is appended.
  std::string base_url;
  std::string model;
  /// Name of the environment variable holding the bearer token. Empty for
  /// endpoints without auth.
  std::string api_key_env = "OPENAI_API_KEY";
  double timeout_s = 60;
  int max_retries = 5;
  double backoff_initial_s = 1.0;
  double backoff_max_s = 30.0;
  int max_tokens = 64;
};

/// OpenAI-compatible chat completions with temperature 0 and one sample.
/// 429, 5xx and connection failures are retried with exponential backoff;
/// 401/403 fail at once with QueryError::Auth.
class OpenAiClient final : public Client {
 public:
  explicit OpenAiClient(EndpointConfig config);
  std::string complete(const Query& q) override;
  std::string name() const override { return "openai:" + config_.model; }

 private:
  EndpointConfig config_;
  std::string api_key_;
  std::string host_;
  std::string path_prefix_;
};

/// Spaces request starts at least 60/rpm seconds apart; rpm 0 disables.
class RateLimiter {
 public:
  explicit RateLimiter(double rpm);
  void acquire();

 private:
  std::mutex mutex_;
  std::chrono::steady_clock::duration interval_{};
  std::chrono::steady_clock::time_point next_{};
};

}  // namespace eedp
