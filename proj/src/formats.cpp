#include "eedp/formats.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <stdexcept>

#include <fmt/core.h>

#include "eedp/templates.hpp"

namespace eedp {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }

  void skip_space() {
    while (!done() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }

  void expect(std::string_view token) {
    if (!accept(token)) fail(fmt::format("expected '{}'", token));
  }

  NodeId node() {
    NodeId value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
    if (ec != std::errc{}) fail("expected a node id");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument(fmt::format("offset {}: {}", pos_, what));
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

ParsedGraph finish(std::optional<std::size_t> n, std::vector<Arc> arcs) {
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  return {n, std::move(arcs)};
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    const auto end = nl == std::string_view::npos ? text.size() : nl;
    lines.push_back(text.substr(start, end - start));
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return lines;
}

// --- tiny XML scanner -------------------------------------------------------

struct XmlTag {
  enum Kind { Declaration, Open, Close, Empty } kind;
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;

  const std::string* attribute(std::string_view key) const {
    for (const auto& [k, v] : attributes) {
      if (k == key) return &v;
    }
    return nullptr;
  }
};

struct XmlScan {
  std::vector<XmlTag> tags;
  std::vector<std::string> errors;
};

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ':' || c == '-' ||
         c == '.';
}

XmlScan scan_xml(std::string_view text) {
  XmlScan scan;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto lt = text.find('<', pos);
    const auto gap = text.substr(pos, (lt == std::string_view::npos ? text.size() : lt) - pos);
    if (!std::all_of(gap.begin(), gap.end(),
                     [](char c) { return std::isspace(static_cast<unsigned char>(c)); })) {
      scan.errors.push_back(fmt::format("unexpected character data at offset {}", pos));
    }
    if (lt == std::string_view::npos) break;
    const auto gt = text.find('>', lt);
    if (gt == std::string_view::npos) {
      scan.errors.push_back(fmt::format("unterminated tag at offset {}", lt));
      break;
    }
    std::string_view body = text.substr(lt + 1, gt - lt - 1);
    pos = gt + 1;
    XmlTag tag{XmlTag::Open, {}, {}};
    if (body.starts_with("?")) {
      if (!body.ends_with("?")) scan.errors.push_back("malformed processing instruction");
      tag.kind = XmlTag::Declaration;
      body = body.substr(1, body.size() >= 2 ? body.size() - 2 : 0);
    } else if (body.starts_with("/")) {
      tag.kind = XmlTag::Close;
      body.remove_prefix(1);
    } else if (body.ends_with("/")) {
      tag.kind = XmlTag::Empty;
      body.remove_suffix(1);
    }
    std::size_t i = 0;
    while (i < body.size() && is_name_char(body[i])) ++i;
    tag.name = std::string(body.substr(0, i));
    if (tag.name.empty()) scan.errors.push_back(fmt::format("tag without a name at offset {}", lt));
    while (i < body.size()) {
      while (i < body.size() && std::isspace(static_cast<unsigned char>(body[i]))) ++i;
      if (i == body.size()) break;
      const std::size_t key_start = i;
      while (i < body.size() && is_name_char(body[i])) ++i;
      const std::string key(body.substr(key_start, i - key_start));
      if (key.empty() || i + 1 >= body.size() || body[i] != '=' || body[i + 1] != '"') {
        scan.errors.push_back(fmt::format("malformed attribute in <{}>", tag.name));
        break;
      }
      const auto close = body.find('"', i + 2);
      if (close == std::string_view::npos) {
        scan.errors.push_back(fmt::format("unterminated attribute value in <{}>", tag.name));
        break;
      }
      if (tag.attribute(key)) scan.errors.push_back(fmt::format("duplicate attribute {}", key));
      tag.attributes.emplace_back(key, std::string(body.substr(i + 2, close - i - 2)));
      i = close + 1;
    }
    if (tag.kind == XmlTag::Close && !tag.attributes.empty()) {
      scan.errors.push_back("closing tag with attributes");
    }
    scan.tags.push_back(std::move(tag));
  }
  return scan;
}

NodeId graphml_node_id(const std::string& id) {
  if (id.size() < 2 || id[0] != 'n') throw std::invalid_argument("unexpected node id " + id);
  Cursor c(std::string_view(id).substr(1));
  const NodeId v = c.node();
  if (!c.done()) throw std::invalid_argument("unexpected node id " + id);
  return v;
}

}  // namespace

ParsedGraph parse_adjacency_list(std::string_view text) {
  Cursor c(text);
  std::vector<Arc> arcs;
  c.expect("{");
  if (!c.accept("}")) {
    do {
      const NodeId u = c.node();
      c.expect(": [");
      if (!c.accept("]")) {
        do {
          arcs.push_back({u, c.node()});
        } while (c.accept(", "));
        c.expect("]");
      }
    } while (c.accept(", "));
    c.expect("}");
  }
  if (!c.done()) c.fail("trailing text");
  return finish(std::nullopt, std::move(arcs));
}

ParsedGraph parse_adjacency_matrix(std::string_view text) {
  const auto lines = split_lines(text);
  Cursor head(lines.front());
  head.expect(templates::kMatrixNodesPrefix);
  if (head.accept(templates::kMatrixNoNodes)) return {0, {}};
  head.expect("0..");
  const std::size_t n = std::size_t{head.node()} + 1;
  if (lines.size() != n + 1) throw std::invalid_argument("matrix row count mismatch");
  std::vector<Arc> arcs;
  for (NodeId u = 0; u < n; ++u) {
    Cursor row(lines[u + 1]);
    for (NodeId v = 0; v < n; ++v) {
      if (v) row.expect(" ");
      if (row.accept("1")) {
        arcs.push_back({u, v});
      } else {
        row.expect("0");
      }
    }
    if (!row.done()) row.fail("row too long");
  }
  return finish(n, std::move(arcs));
}

ParsedGraph parse_edge_list(std::string_view text) {
  Cursor c(text);
  std::vector<Arc> arcs;
  if (!c.done()) {
    do {
      c.expect("(");
      const NodeId u = c.node();
      c.expect(", ");
      const NodeId v = c.node();
      c.expect(")");
      arcs.push_back({u, v});
    } while (c.accept(", "));
  }
  if (!c.done()) c.fail("trailing text");
  return finish(std::nullopt, std::move(arcs));
}

ParsedGraph parse_ego_graph(std::string_view text) {
  std::vector<Arc> arcs;
  std::size_t n = 0;
  if (text.empty()) return {0, {}};
  for (std::string_view line : split_lines(text)) {
    Cursor c(line);
    c.expect(templates::kEgoPrefix);
    const NodeId u = c.node();
    c.expect(": [");
    if (!c.accept("]")) {
      do {
        arcs.push_back({u, c.node()});
      } while (c.accept(", "));
      c.expect("]");
    }
    if (!c.done()) c.fail("trailing text");
    ++n;
  }
  return finish(n, std::move(arcs));
}

ParsedGraph parse_gml(std::string_view text) {
  // Whitespace-separated tokens; lists are "key [ ... ]".
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) tokens.push_back(text.substr(start, i - start));
  }
  auto to_node = [](std::string_view tok) {
    Cursor c(tok);
    const NodeId v = c.node();
    if (!c.done()) c.fail("expected an integer");
    return v;
  };
  std::size_t t = 0;
  auto next = [&]() -> std::string_view {
    if (t >= tokens.size()) throw std::invalid_argument("unexpected end of GML");
    return tokens[t++];
  };
  auto expect = [&](std::string_view tok) {
    if (next() != tok) throw std::invalid_argument(fmt::format("GML: expected '{}'", tok));
  };
  expect("graph");
  expect("[");
  std::set<NodeId> nodes;
  std::vector<Arc> arcs;
  while (true) {
    const auto key = next();
    if (key == "]") break;
    if (key == "directed") {
      if (next() != "1") throw std::invalid_argument("GML: only directed graphs are written");
    } else if (key == "node") {
      expect("[");
      expect("id");
      nodes.insert(to_node(next()));
      expect("]");
    } else if (key == "edge") {
      expect("[");
      expect("source");
      const NodeId u = to_node(next());
      expect("target");
      const NodeId v = to_node(next());
      expect("]");
      arcs.push_back({u, v});
    } else {
      throw std::invalid_argument(fmt::format("GML: unexpected key '{}'", key));
    }
  }
  if (t != tokens.size()) throw std::invalid_argument("GML: trailing tokens");
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    if (!nodes.contains(static_cast<NodeId>(v))) throw std::invalid_argument("GML: node ids not dense");
  }
  return finish(nodes.size(), std::move(arcs));
}

ParsedGraph parse_graphml(std::string_view text) {
  const auto problems = graphml_schema_violations(text);
  if (!problems.empty()) throw std::invalid_argument("GraphML: " + problems.front());
  const auto scan = scan_xml(text);
  std::size_t n = 0;
  std::vector<Arc> arcs;
  for (const XmlTag& tag : scan.tags) {
    if (tag.kind == XmlTag::Close) continue;
    if (tag.name == "node") {
      if (graphml_node_id(*tag.attribute("id")) != n) {
        throw std::invalid_argument("GraphML: node ids not dense");
      }
      ++n;
    } else if (tag.name == "edge") {
      arcs.push_back({graphml_node_id(*tag.attribute("source")),
                      graphml_node_id(*tag.attribute("target"))});
    }
  }
  return finish(n, std::move(arcs));
}

ParsedGraph parse_natural_language(std::string_view text) {
  if (text == templates::kNaturalEmpty) return {std::nullopt, {}};
  std::vector<Arc> arcs;
  for (std::string_view line : split_lines(text)) {
    Cursor c(line);
    c.expect(templates::kNaturalPrefix);
    const NodeId u = c.node();
    c.expect(templates::kNaturalMiddle);
    const NodeId v = c.node();
    c.expect(templates::kNaturalSuffix);
    if (!c.done()) c.fail("trailing text");
    arcs.push_back({u, v});
  }
  return finish(std::nullopt, std::move(arcs));
}

std::vector<std::string> graphml_schema_violations(std::string_view text) {
  XmlScan scan = scan_xml(text);
  std::vector<std::string> errors = std::move(scan.errors);
  const auto& tags = scan.tags;
  if (tags.empty() || tags.front().kind != XmlTag::Declaration || tags.front().name != "xml") {
    errors.push_back("missing XML declaration");
  } else if (const auto* version = tags.front().attribute("version"); !version || *version != "1.0") {
    errors.push_back("XML declaration must state version 1.0");
  }

  static const std::map<std::string, std::set<std::string>> kAllowedAttributes{
      {"graphml", {"xmlns", "xmlns:xsi", "xsi:schemaLocation"}},
      {"graph", {"id", "edgedefault"}},
      {"node", {"id"}},
      {"edge", {"id", "source", "target", "directed"}},
  };
  static const std::map<std::string, std::string> kParent{
      {"graphml", ""}, {"graph", "graphml"}, {"node", "graph"}, {"edge", "graph"}};

  std::vector<std::string> open;
  std::set<std::string> node_ids;
  std::vector<std::pair<std::string, std::string>> edge_refs;
  bool root_seen = false;
  bool root_closed = false;
  for (std::size_t i = 1; i < tags.size(); ++i) {
    const XmlTag& tag = tags[i];
    if (tag.kind == XmlTag::Declaration) {
      errors.push_back("declaration after the first tag");
      continue;
    }
    if (tag.kind == XmlTag::Close) {
      if (open.empty() || open.back() != tag.name) {
        errors.push_back(fmt::format("unbalanced closing tag </{}>", tag.name));
      } else {
        open.pop_back();
        if (open.empty()) root_closed = true;
      }
      continue;
    }
    if (root_closed) errors.push_back("content after the root element");
    const auto parent = kParent.find(tag.name);
    if (parent == kParent.end()) {
      errors.push_back(fmt::format("element <{}> is not expected", tag.name));
      continue;
    }
    const std::string actual_parent = open.empty() ? "" : open.back();
    if (actual_parent != parent->second) {
      errors.push_back(fmt::format("<{}> may not appear inside <{}>", tag.name, actual_parent));
    }
    for (const auto& [key, value] : tag.attributes) {
      if (!kAllowedAttributes.at(tag.name).contains(key)) {
        errors.push_back(fmt::format("attribute {} not allowed on <{}>", key, tag.name));
      }
    }
    if (tag.name == "graphml") {
      if (root_seen) errors.push_back("more than one <graphml> root");
      root_seen = true;
      const auto* ns = tag.attribute("xmlns");
      if (!ns || *ns != templates::kGraphMlNamespace) errors.push_back("root is not in the GraphML namespace");
    } else if (tag.name == "graph") {
      const auto* def = tag.attribute("edgedefault");
      if (!def || (*def != "directed" && *def != "undirected")) {
        errors.push_back("<graph> needs edgedefault=\"directed|undirected\"");
      }
    } else if (tag.name == "node") {
      const auto* id = tag.attribute("id");
      if (!id || id->empty()) {
        errors.push_back("<node> without id");
      } else if (!node_ids.insert(*id).second) {
        errors.push_back(fmt::format("duplicate node id {}", *id));
      }
    } else if (tag.name == "edge") {
      const auto* source = tag.attribute("source");
      const auto* target = tag.attribute("target");
      if (!source || !target) {
        errors.push_back("<edge> needs source and target");
      } else {
        edge_refs.emplace_back(*source, *target);
      }
      if (const auto* directed = tag.attribute("directed");
          directed && *directed != "true" && *directed != "false") {
        errors.push_back("edge directed attribute must be a boolean");
      }
    }
    if (tag.kind == XmlTag::Open) open.push_back(tag.name);
  }
  if (!root_seen) errors.push_back("missing <graphml> root");
  if (!open.empty()) errors.push_back(fmt::format("unclosed element <{}>", open.back()));
  for (const auto& [source, target] : edge_refs) {
    if (!node_ids.contains(source) || !node_ids.contains(target)) {
      errors.push_back(fmt::format("edge {} -> {} references an undeclared node", source, target));
    }
  }
  return errors;
}

}  // namespace eedp
