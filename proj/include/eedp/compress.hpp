#pragma once

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "eedp/oracles.hpp"

namespace eedp {

// Generalized-list form of a path set sharing one start and one end node:
// a sequence of shared nodes and branches, where each branch lists the
// alternative node runs that can appear at that point. Expanding takes one
// alternative from every branch. Branch alternatives are plain node runs; an
// empty run means the surrounding shared nodes are joined directly.

struct SharedNode {
  NodeId id = 0;
  friend bool operator==(const SharedNode&, const SharedNode&) = default;
};

struct Branch {
  std::vector<Path> alternatives;
  friend bool operator==(const Branch&, const Branch&) = default;
};

using Segment = std::variant<SharedNode, Branch>;

class CompressedPathTree {
 public:
  /// Validates the shape: first and last segments are shared nodes, every
  /// branch has at least two distinct alternatives. Throws
  /// std::invalid_argument otherwise.
  explicit CompressedPathTree(std::vector<Segment> segments);

  const std::vector<Segment>& segments() const noexcept { return segments_; }
  NodeId start() const { return std::get<SharedNode>(segments_.front()).id; }
  NodeId end() const { return std::get<SharedNode>(segments_.back()).id; }
  std::size_t branch_count() const;

  friend bool operator==(const CompressedPathTree&, const CompressedPathTree&) = default;

 private:
  std::vector<Segment> segments_;
};

/// Merges paths with a common first and last node. One cursor per path walks
/// forward; where all cursors agree the node is emitted as shared and every
/// cursor advances. Otherwise the cursors advance independently up to a
/// convergence node: the earliest node of the first path's remaining run that
/// every remaining run contains and at which the set splits into all
/// combinations of its distinct prefixes and suffixes. The end node always
/// qualifies. Prefixes become one branch and merging continues on the
/// suffixes, so expand(compress(P)) equals P as a set.
///
/// Throws std::invalid_argument on empty input, empty paths or mismatched
/// endpoints.
CompressedPathTree compress(std::span<const Path> paths);

/// Every path the tree denotes, in branch-major order, without duplicates.
std::vector<Path> expand(const CompressedPathTree& tree);

/// Literal token standing for an empty branch alternative.
inline constexpr std::string_view kEmptyAlternative = "\xCE\xB5";  // U+03B5

/// Text form, e.g. "0 -> (1 | 2 -> 4 | ε) -> 3".
std::string render(const CompressedPathTree& tree);
/// A single path as "0 -> 1 -> 3".
std::string render_path(const Path& path);

/// Inverse of render. Throws std::invalid_argument on malformed text.
CompressedPathTree parse_compressed(std::string_view text);

/// {"segments": [{"node": 0}, {"branch": [[1], [2]]}, {"node": 3}]}
nlohmann::json tree_to_json(const CompressedPathTree& tree);

}  // namespace eedp
