#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace eedp {

/// Counts prompt tokens. Implementations are immutable and thread-safe.
class Tokenizer {
 public:
  virtual ~Tokenizer() = default;
  virtual std::size_t count(std::string_view text) const = 0;
  virtual std::string name() const = 0;
  /// False for approximations.
  virtual bool exact() const = 0;
};

/// Approximate count: ceil(bytes / 4).
class HeuristicTokenizer final : public Tokenizer {
 public:
  std::size_t count(std::string_view text) const override { return (text.size() + 3) / 4; }
  std::string name() const override { return "heuristic-bytes/4"; }
  bool exact() const override { return false; }
};

/// Byte-level BPE over a tiktoken rank file (one "<base64 token> <rank>" per
/// line), pre-tokenized with the cl100k_base split pattern. Special tokens
/// are not recognised; text is encoded as ordinary bytes.
class BpeTokenizer final : public Tokenizer {
 public:
  /// Throws std::runtime_error if the file is missing or malformed.
  static std::shared_ptr<const BpeTokenizer> load(const std::filesystem::path& rank_file);

  std::vector<std::uint32_t> encode(std::string_view text) const;
  std::size_t count(std::string_view text) const override;
  std::string name() const override { return "bpe:" + source_; }
  bool exact() const override { return true; }
  std::size_t vocab_size() const noexcept { return ranks_.size(); }

  ~BpeTokenizer() override;
  BpeTokenizer(const BpeTokenizer&) = delete;
  BpeTokenizer& operator=(const BpeTokenizer&) = delete;

 private:
  struct Splitter;
  BpeTokenizer() = default;
  void encode_piece(std::string_view piece, std::vector<std::uint32_t>& out) const;

  std::unordered_map<std::string, std::uint32_t> ranks_;
  std::unique_ptr<Splitter> splitter_;
  std::string source_;
};

/// Rank file named by $EEDP_BPE_VOCAB, if that file exists.
std::optional<std::filesystem::path> default_bpe_vocab();

/// "heuristic" or "bpe". An empty `vocab` falls back to default_bpe_vocab().
/// Throws std::runtime_error when "bpe" is requested without a vocabulary.
std::shared_ptr<const Tokenizer> make_tokenizer(std::string_view kind,
                                                const std::filesystem::path& vocab = {});

}  // namespace eedp
