#include "eedp/tokenizer.hpp"

#include <cstdlib>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <fmt/core.h>
#include <openssl/evp.h>
#include <unicode/regex.h>
#include <unicode/utext.h>

namespace eedp {

namespace {

// cl100k_base split pattern, spelled for ICU: \s and \S become the Unicode
// White_Space property to match the Rust regex semantics, $ becomes \z.
constexpr const char* kCl100kPattern =
    R"('(?i:[sdmt]|ll|ve|re)|[^\r\n\p{L}\p{N}]?+\p{L}++|\p{N}{1,3}+| ?[^\p{White_Space}\p{L}\p{N}]++[\r\n]*+|\p{White_Space}++\z|\p{White_Space}*[\r\n]|\p{White_Space}+(?!\P{White_Space})|\p{White_Space})";

constexpr std::uint32_t kNoRank = std::numeric_limits<std::uint32_t>::max();

std::string decode_base64(std::string_view encoded) {
  std::string out(3 * ((encoded.size() + 3) / 4), '\0');
  const int n = EVP_DecodeBlock(reinterpret_cast<unsigned char*>(out.data()),
                                reinterpret_cast<const unsigned char*>(encoded.data()),
                                static_cast<int>(encoded.size()));
  if (n < 0) throw std::runtime_error("invalid base64 token in rank file");
  std::size_t len = static_cast<std::size_t>(n);
  // EVP_DecodeBlock counts padding bytes as output.
  for (auto it = encoded.rbegin(); it != encoded.rend() && *it == '='; ++it) --len;
  out.resize(len);
  return out;
}

}  // namespace

struct BpeTokenizer::Splitter {
  std::unique_ptr<icu::RegexPattern> pattern;

  Splitter() {
    UErrorCode status = U_ZERO_ERROR;
    UParseError parse_error;
    pattern.reset(icu::RegexPattern::compile(icu::UnicodeString::fromUTF8(kCl100kPattern), 0,
                                             parse_error, status));
    if (U_FAILURE(status)) {
      throw std::runtime_error(
          fmt::format("cannot compile pre-tokenizer pattern: {}", u_errorName(status)));
    }
  }

  // Calls fn(begin, end) with UTF-8 byte offsets of each pre-token.
  template <typename Fn>
  void split(std::string_view text, Fn&& fn) const {
    UErrorCode status = U_ZERO_ERROR;
    UText* ut = utext_openUTF8(nullptr, text.data(), static_cast<int64_t>(text.size()), &status);
    std::unique_ptr<icu::RegexMatcher> matcher(pattern->matcher(status));
    if (U_FAILURE(status)) {
      utext_close(ut);
      throw std::runtime_error("cannot create pre-tokenizer matcher");
    }
    matcher->reset(ut);
    while (matcher->find(status) && U_SUCCESS(status)) {
      fn(static_cast<std::size_t>(matcher->start64(status)),
         static_cast<std::size_t>(matcher->end64(status)));
    }
    matcher.reset();
    utext_close(ut);
    if (U_FAILURE(status)) throw std::runtime_error("pre-tokenizer failed");
  }
};

BpeTokenizer::~BpeTokenizer() = default;

std::shared_ptr<const BpeTokenizer> BpeTokenizer::load(const std::filesystem::path& rank_file) {
  std::ifstream in(rank_file);
  if (!in) throw std::runtime_error("cannot open BPE rank file " + rank_file.string());
  std::shared_ptr<BpeTokenizer> tok(new BpeTokenizer());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto space = line.find(' ');
    if (space == std::string::npos) {
      throw std::runtime_error(fmt::format("{}:{}: expected '<token> <rank>'",
                                           rank_file.string(), line_no));
    }
    const auto rank = std::strtoul(line.c_str() + space + 1, nullptr, 10);
    tok->ranks_.emplace(decode_base64(std::string_view(line).substr(0, space)),
                        static_cast<std::uint32_t>(rank));
  }
  if (tok->ranks_.empty()) throw std::runtime_error("empty BPE rank file " + rank_file.string());
  tok->splitter_ = std::make_unique<Splitter>();
  tok->source_ = rank_file.filename().string();
  return tok;
}

void BpeTokenizer::encode_piece(std::string_view piece, std::vector<std::uint32_t>& out) const {
  auto rank_of = [this](std::string_view bytes) -> std::uint32_t {
    const auto it = ranks_.find(std::string(bytes));
    return it == ranks_.end() ? kNoRank : it->second;
  };
  if (const auto whole = rank_of(piece); whole != kNoRank) {
    out.push_back(whole);
    return;
  }
  // bounds[i] is the byte offset where part i starts; merge_rank[i] is the
  // rank of joining parts i and i + 1.
  std::vector<std::size_t> bounds(piece.size() + 1);
  for (std::size_t i = 0; i < bounds.size(); ++i) bounds[i] = i;
  auto pair_rank = [&](std::size_t i) {
    if (i + 2 >= bounds.size()) return kNoRank;
    return rank_of(piece.substr(bounds[i], bounds[i + 2] - bounds[i]));
  };
  std::vector<std::uint32_t> merge_rank(bounds.size());
  for (std::size_t i = 0; i < bounds.size(); ++i) merge_rank[i] = pair_rank(i);

  while (bounds.size() > 2) {
    std::size_t best = 0;
    for (std::size_t i = 1; i + 1 < merge_rank.size(); ++i) {
      if (merge_rank[i] < merge_rank[best]) best = i;
    }
    if (merge_rank[best] == kNoRank) break;
    bounds.erase(bounds.begin() + static_cast<std::ptrdiff_t>(best) + 1);
    merge_rank.erase(merge_rank.begin() + static_cast<std::ptrdiff_t>(best) + 1);
    merge_rank[best] = pair_rank(best);
    if (best > 0) merge_rank[best - 1] = pair_rank(best - 1);
  }
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    const auto r = rank_of(piece.substr(bounds[i], bounds[i + 1] - bounds[i]));
    if (r == kNoRank) {
      throw std::runtime_error("BPE vocabulary does not cover every single byte");
    }
    out.push_back(r);
  }
}

std::vector<std::uint32_t> BpeTokenizer::encode(std::string_view text) const {
  std::vector<std::uint32_t> tokens;
  splitter_->split(text, [&](std::size_t begin, std::size_t end) {
    encode_piece(text.substr(begin, end - begin), tokens);
  });
  return tokens;
}

std::size_t BpeTokenizer::count(std::string_view text) const {
  if (text.empty()) return 0;
  return encode(text).size();
}

std::optional<std::filesystem::path> default_bpe_vocab() {
  if (const char* env = std::getenv("EEDP_BPE_VOCAB"); env && *env) {
    std::filesystem::path p(env);
    if (std::filesystem::exists(p)) return p;
  }
  return std::nullopt;
}

std::shared_ptr<const Tokenizer> make_tokenizer(std::string_view kind,
                                                const std::filesystem::path& vocab) {
  if (kind == "heuristic") return std::make_shared<HeuristicTokenizer>();
  if (kind == "bpe") {
    std::filesystem::path path = vocab;
    if (path.empty()) {
      auto found = default_bpe_vocab();
      if (!found) {
        throw std::runtime_error(
            "exact token counts need a BPE rank file (--vocab or EEDP_BPE_VOCAB)");
      }
      path = *found;
    }
    return BpeTokenizer::load(path);
  }
  throw std::invalid_argument(fmt::format("unknown tokenizer '{}'", kind));
}

}  // namespace eedp
