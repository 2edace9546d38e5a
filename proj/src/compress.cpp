#include "eedp/compress.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <stdexcept>
#include <unordered_set>

#include <fmt/core.h>

namespace eedp {

namespace {

struct PathHash {
  std::size_t operator()(const Path& p) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (NodeId v : p) h = (h ^ v) * 0x100000001b3ULL;
    return h ^ p.size();
  }
};

/// Distinct values in first-appearance order.
class OrderedPathSet {
 public:
  bool insert(Path p) {
    if (!seen_.insert(p).second) return false;
    items_.push_back(std::move(p));
    return true;
  }
  std::size_t size() const { return items_.size(); }
  std::vector<Path> take() { return std::move(items_); }

 private:
  std::unordered_set<Path, PathHash> seen_;
  std::vector<Path> items_;
};

struct Split {
  std::vector<Path> prefixes;
  std::vector<Path> suffixes;
};

// Splits every run at its occurrence of `node`. Succeeds only if the runs are
// exactly the cross product of their distinct prefixes and suffixes.
std::optional<Split> split_at(const std::vector<Path>& runs, NodeId node) {
  OrderedPathSet prefixes;
  OrderedPathSet suffixes;
  for (const Path& run : runs) {
    const auto it = std::find(run.begin(), run.end(), node);
    if (it == run.end()) return std::nullopt;
    prefixes.insert(Path(run.begin(), it));
    suffixes.insert(Path(it, run.end()));
  }
  if (prefixes.size() * suffixes.size() != runs.size()) return std::nullopt;
  return Split{prefixes.take(), suffixes.take()};
}

}  // namespace

CompressedPathTree::CompressedPathTree(std::vector<Segment> segments)
    : segments_(std::move(segments)) {
  if (segments_.empty()) throw std::invalid_argument("compressed tree has no segments");
  if (!std::holds_alternative<SharedNode>(segments_.front()) ||
      !std::holds_alternative<SharedNode>(segments_.back())) {
    throw std::invalid_argument("compressed tree must start and end with a shared node");
  }
  for (const Segment& s : segments_) {
    if (const auto* branch = std::get_if<Branch>(&s)) {
      if (branch->alternatives.size() < 2) {
        throw std::invalid_argument("branch needs at least two alternatives");
      }
      std::unordered_set<Path, PathHash> distinct(branch->alternatives.begin(),
                                                  branch->alternatives.end());
      if (distinct.size() != branch->alternatives.size()) {
        throw std::invalid_argument("branch alternatives must be distinct");
      }
    }
  }
}

std::size_t CompressedPathTree::branch_count() const {
  return static_cast<std::size_t>(std::count_if(
      segments_.begin(), segments_.end(),
      [](const Segment& s) { return std::holds_alternative<Branch>(s); }));
}

CompressedPathTree compress(std::span<const Path> paths) {
  if (paths.empty()) throw std::invalid_argument("cannot compress an empty path set");
  const Path& first = paths.front();
  if (first.empty()) throw std::invalid_argument("cannot compress an empty path");
  OrderedPathSet distinct;
  for (const Path& p : paths) {
    if (p.empty() || p.front() != first.front() || p.back() != first.back()) {
      throw std::invalid_argument(fmt::format(
          "all paths must run from {} to {}", first.front(), first.back()));
    }
    distinct.insert(p);
  }

  std::vector<Path> runs = distinct.take();
  std::vector<Segment> segments;
  while (true) {
    const NodeId head = runs.front().front();
    const bool agree = std::all_of(runs.begin(), runs.end(),
                                   [head](const Path& r) { return r.front() == head; });
    if (agree) {
      segments.push_back(SharedNode{head});
      // Runs are simple and share their last node, so a run starting at the
      // end node is exactly [end].
      if (runs.front().size() == 1) break;
      for (Path& r : runs) r.erase(r.begin());
      continue;
    }
    std::optional<Split> split;
    for (NodeId candidate : runs.front()) {
      split = split_at(runs, candidate);
      if (split) break;
    }
    // The shared end node always yields a valid split.
    segments.push_back(Branch{std::move(split->prefixes)});
    runs = std::move(split->suffixes);
  }
  return CompressedPathTree(std::move(segments));
}

std::vector<Path> expand(const CompressedPathTree& tree) {
  const auto& segments = tree.segments();
  std::vector<const Branch*> branches;
  for (const Segment& s : segments) {
    if (const auto* b = std::get_if<Branch>(&s)) branches.push_back(b);
  }
  std::vector<std::size_t> choice(branches.size(), 0);
  OrderedPathSet out;
  while (true) {
    Path p;
    std::size_t b = 0;
    for (const Segment& s : segments) {
      if (const auto* shared = std::get_if<SharedNode>(&s)) {
        p.push_back(shared->id);
      } else {
        const Path& alt = branches[b]->alternatives[choice[b]];
        p.insert(p.end(), alt.begin(), alt.end());
        ++b;
      }
    }
    out.insert(std::move(p));
    // Odometer over branch choices, last branch fastest.
    std::size_t k = branches.size();
    while (true) {
      if (k == 0) return out.take();
      --k;
      if (++choice[k] < branches[k]->alternatives.size()) break;
      choice[k] = 0;
    }
  }
}

std::string render_path(const Path& path) {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += " -> ";
    out += std::to_string(path[i]);
  }
  return out;
}

std::string render(const CompressedPathTree& tree) {
  std::string out;
  bool first = true;
  for (const Segment& s : tree.segments()) {
    if (!first) out += " -> ";
    first = false;
    if (const auto* shared = std::get_if<SharedNode>(&s)) {
      out += std::to_string(shared->id);
      continue;
    }
    out += '(';
    const auto& alts = std::get<Branch>(s).alternatives;
    for (std::size_t i = 0; i < alts.size(); ++i) {
      if (i) out += " | ";
      out += alts[i].empty() ? std::string(kEmptyAlternative) : render_path(alts[i]);
    }
    out += ')';
  }
  return out;
}

namespace {

class TreeParser {
 public:
  explicit TreeParser(std::string_view text) : text_(text) {}

  CompressedPathTree parse() {
    std::vector<Segment> segments;
    segments.push_back(segment());
    while (accept("->")) segments.push_back(segment());
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return CompressedPathTree(std::move(segments));
  }

 private:
  Segment segment() {
    if (!accept("(")) return SharedNode{node()};
    Branch branch;
    do {
      branch.alternatives.push_back(alternative());
    } while (accept("|"));
    if (!accept(")")) fail("expected ')'");
    return branch;
  }

  Path alternative() {
    if (accept(kEmptyAlternative)) return {};
    Path alt{node()};
    while (accept("->")) alt.push_back(node());
    return alt;
  }

  NodeId node() {
    skip_space();
    NodeId value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
    if (ec != std::errc{}) fail("expected a node id");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const char* what) const {
    throw std::invalid_argument(fmt::format("compressed path text, offset {}: {}", pos_, what));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

CompressedPathTree parse_compressed(std::string_view text) { return TreeParser(text).parse(); }

nlohmann::json tree_to_json(const CompressedPathTree& tree) {
  nlohmann::json segments = nlohmann::json::array();
  for (const Segment& s : tree.segments()) {
    if (const auto* shared = std::get_if<SharedNode>(&s)) {
      segments.push_back({{"node", shared->id}});
    } else {
      segments.push_back({{"branch", std::get<Branch>(s).alternatives}});
    }
  }
  return {{"segments", segments}};
}

}  // namespace eedp
