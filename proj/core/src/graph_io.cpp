// Copyright 2026 The bmclust Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bmclust/graph_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string_view>
#include <unordered_map>
#include <variant>

#include "bmclust/error.hpp"

namespace bmclust {
namespace {

// Whitespace-separated fields up to an optional trailing '#' comment.
std::vector<std::string_view> split_fields(std::string_view line) {
  line = line.substr(0, line.find('#'));
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

bool is_blank_or_comment(std::string_view line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::int64_t parse_vertex(std::string_view field, std::size_t line_no) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || value < 0) {
    throw ParseError("expected a non-negative integer vertex id, got '" + std::string(field) + "'",
                     line_no);
  }
  return value;
}

double parse_weight(std::string_view field, std::size_t line_no) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || !(value > 0.0)) {
    throw ParseError("expected a positive edge weight, got '" + std::string(field) + "'", line_no);
  }
  return value;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

// ---------------------------------------------------------------------------
// GML

struct GmlList;
using GmlValue = std::variant<double, std::string, std::shared_ptr<GmlList>>;
struct GmlList {
  std::vector<std::pair<std::string, GmlValue>> entries;
};

class GmlParser {
 public:
  explicit GmlParser(std::string text) : text_(std::move(text)) {}

  GmlList parse_document() {
    GmlList root = parse_entries(/*nested=*/false);
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw IoError("malformed GML at line " + std::to_string(line_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  GmlList parse_entries(bool nested) {
    GmlList list;
    for (;;) {
      skip_space();
      if (pos_ >= text_.size()) {
        if (nested) fail("unterminated '['");
        return list;
      }
      if (text_[pos_] == ']') {
        if (!nested) fail("unbalanced ']'");
        ++pos_;
        return list;
      }
      std::string key = parse_key();
      skip_space();
      if (pos_ >= text_.size()) fail("key '" + key + "' has no value");
      list.entries.emplace_back(std::move(key), parse_value());
    }
  }

  std::string parse_key() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (pos_ == start || std::isdigit(static_cast<unsigned char>(text_[start]))) {
      fail("expected a key");
    }
    return text_.substr(start, pos_ - start);
  }

  GmlValue parse_value() {
    const char c = text_[pos_];
    if (c == '[') {
      ++pos_;
      return std::make_shared<GmlList>(parse_entries(/*nested=*/true));
    }
    if (c == '"') {
      ++pos_;
      const std::size_t start = pos_;
      while (pos_ < text_.size() && text_[pos_] != '"') {
        if (text_[pos_] == '\n') ++line_;
        ++pos_;
      }
      if (pos_ >= text_.size()) fail("unterminated string");
      std::string s = text_.substr(start, pos_ - start);
      ++pos_;
      return s;
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '[' && text_[pos_] != ']') {
      ++pos_;
    }
    const std::string_view token(text_.data() + start, pos_ - start);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
      fail("expected a number, string or list, got '" + std::string(token) + "'");
    }
    return value;
  }

  std::string text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

const GmlValue* find_key(const GmlList& list, std::string_view key) {
  for (const auto& [k, v] : list.entries) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::optional<std::int64_t> integer_value(const GmlValue* value) {
  if (value == nullptr) return std::nullopt;
  const double* d = std::get_if<double>(value);
  if (d == nullptr || *d != static_cast<double>(static_cast<std::int64_t>(*d))) return std::nullopt;
  return static_cast<std::int64_t>(*d);
}

}  // namespace

LoadedGraph read_edge_list(std::istream& in, const EdgeListOptions& options) {
  struct RawEdge {
    std::int64_t u;
    std::int64_t v;
    double w;
  };
  std::vector<RawEdge> raw;
  std::string line;
  std::size_t line_no = 0;
  std::int64_t max_id = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    const auto fields = split_fields(line);
    if (fields.size() < 2 || fields.size() > 3) {
      throw ParseError("expected 'u v [w]', got " + std::to_string(fields.size()) + " fields",
                       line_no);
    }
    const std::int64_t u = parse_vertex(fields[0], line_no);
    const std::int64_t v = parse_vertex(fields[1], line_no);
    if (u == v) throw ParseError("self-loop on vertex " + std::to_string(u), line_no);
    if (std::max(u, v) >= std::numeric_limits<VertexId>::max()) {
      throw ParseError("vertex id too large", line_no);
    }
    const double w = fields.size() == 3 ? parse_weight(fields[2], line_no) : 1.0;
    raw.push_back({u, v, w});
    max_id = std::max({max_id, u, v});
  }
  if (raw.empty()) throw IoError("no edges");

  LoadedGraph out;
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  std::size_t n = 0;
  if (options.remap_ids) {
    std::vector<std::int64_t> ids;
    ids.reserve(raw.size() * 2);
    for (const RawEdge& e : raw) {
      ids.push_back(e.u);
      ids.push_back(e.v);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    auto dense = [&ids](std::int64_t id) {
      return static_cast<VertexId>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
    };
    for (const RawEdge& e : raw) edges.push_back({dense(e.u), dense(e.v), e.w});
    n = ids.size();
    out.original_ids = std::move(ids);
  } else {
    for (const RawEdge& e : raw) {
      edges.push_back({static_cast<VertexId>(e.u), static_cast<VertexId>(e.v), e.w});
    }
    n = std::max(static_cast<std::size_t>(max_id + 1), options.min_vertex_count);
    out.original_ids.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.original_ids[i] = static_cast<std::int64_t>(i);
  }
  out.graph = Graph::from_edges(n, edges);
  return out;
}

LoadedGraph load_edge_list(const std::filesystem::path& path, const EdgeListOptions& options) {
  auto in = open_input(path);
  try {
    return read_edge_list(in, options);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line());
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_edge_list(const Graph& g, std::ostream& out) {
  const bool weighted = g.is_weighted();
  for (const Edge& e : g.edges()) {
    out << e.u << '\t' << e.v;
    if (weighted) out << '\t' << e.weight;
    out << '\n';
  }
}

void write_edge_list(const Graph& g, const std::filesystem::path& path) {
  auto out = open_output(path);
  out.precision(17);
  write_edge_list(g, out);
  if (!out) throw IoError("failed writing " + path.string());
}

void write_id_mapping(std::span<const std::int64_t> original_ids, const std::filesystem::path& path) {
  auto out = open_output(path);
  for (std::size_t i = 0; i < original_ids.size(); ++i) out << i << '\t' << original_ids[i] << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

GmlGraph read_gml_subset(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const GmlList root = GmlParser(buffer.str()).parse_document();

  const GmlValue* graph_value = find_key(root, "graph");
  const auto* graph_list = graph_value ? std::get_if<std::shared_ptr<GmlList>>(graph_value) : nullptr;
  if (graph_list == nullptr) throw IoError("malformed GML: no 'graph [ ... ]' block");

  GmlGraph out;
  std::unordered_map<std::int64_t, VertexId> dense;
  std::vector<std::optional<std::int64_t>> values;
  struct PendingEdge {
    std::int64_t source;
    std::int64_t target;
  };
  std::vector<PendingEdge> pending;

  for (const auto& [key, value] : (*graph_list)->entries) {
    if (key == "directed") {
      if (integer_value(&value).value_or(0) != 0) {
        out.warnings.push_back("GML declares a directed graph; edges are read as undirected");
      }
      continue;
    }
    if (key != "node" && key != "edge") continue;
    const auto* block = std::get_if<std::shared_ptr<GmlList>>(&value);
    if (block == nullptr) throw IoError("malformed GML: '" + key + "' must be a list");
    if (key == "node") {
      const auto id = integer_value(find_key(**block, "id"));
      if (!id) throw IoError("malformed GML: node without integer 'id'");
      if (!dense.emplace(*id, static_cast<VertexId>(out.node_ids.size())).second) {
        throw IoError("malformed GML: duplicate node id " + std::to_string(*id));
      }
      out.node_ids.push_back(*id);
      values.push_back(integer_value(find_key(**block, "value")));
    } else {
      const auto source = integer_value(find_key(**block, "source"));
      const auto target = integer_value(find_key(**block, "target"));
      if (!source || !target) throw IoError("malformed GML: edge missing 'source' or 'target'");
      pending.push_back({*source, *target});
    }
  }

  std::vector<Edge> edges;
  edges.reserve(pending.size());
  for (const PendingEdge& e : pending) {
    const auto su = dense.find(e.source);
    const auto sv = dense.find(e.target);
    if (su == dense.end() || sv == dense.end()) {
      throw IoError("malformed GML: edge references unknown node " +
                    std::to_string(su == dense.end() ? e.source : e.target));
    }
    if (su->second == sv->second) {
      throw IoError("GML edge is a self-loop on node " + std::to_string(e.source));
    }
    edges.push_back({su->second, sv->second, 1.0});
  }
  if (edges.empty()) throw IoError("no edges");
  out.graph = Graph::from_edges(out.node_ids.size(), edges);

  const auto with_value = std::count_if(values.begin(), values.end(),
                                        [](const auto& v) { return v.has_value(); });
  if (with_value == static_cast<std::ptrdiff_t>(values.size())) {
    std::vector<std::int64_t> labels;
    labels.reserve(values.size());
    for (const auto& v : values) labels.push_back(*v);
    out.labels = std::move(labels);
  } else if (with_value > 0) {
    out.warnings.push_back("only " + std::to_string(with_value) + " of " +
                           std::to_string(values.size()) +
                           " nodes carry a 'value'; ground-truth labels ignored");
  }
  return out;
}

GmlGraph load_gml_subset(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_gml_subset(in);
}

std::vector<std::int64_t> read_labels(std::istream& in, std::size_t expected_vertices) {
  std::map<std::int64_t, std::int64_t> by_vertex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 2) throw ParseError("expected 'vertex<TAB>label'", line_no);
    const std::int64_t vertex = parse_vertex(fields[0], line_no);
    std::int64_t label = 0;
    const auto [ptr, ec] =
        std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), label);
    if (ec != std::errc{} || ptr != fields[1].data() + fields[1].size()) {
      throw ParseError("expected an integer label, got '" + std::string(fields[1]) + "'", line_no);
    }
    if (!by_vertex.emplace(vertex, label).second) {
      throw ParseError("vertex " + std::to_string(vertex) + " labeled twice", line_no);
    }
  }
  const std::size_t n = expected_vertices == 0 && !by_vertex.empty()
                            ? static_cast<std::size_t>(by_vertex.rbegin()->first + 1)
                            : expected_vertices;
  if (by_vertex.size() != n ||
      (!by_vertex.empty() && static_cast<std::size_t>(by_vertex.rbegin()->first) >= n)) {
    throw InvalidArgument("labels cover " + std::to_string(by_vertex.size()) +
                          " vertices but the graph has " + std::to_string(n));
  }
  std::vector<std::int64_t> labels;
  labels.reserve(n);
  for (const auto& [vertex, label] : by_vertex) labels.push_back(label);
  return labels;
}

std::vector<std::int64_t> load_labels(const std::filesystem::path& path, std::size_t expected_vertices) {
  auto in = open_input(path);
  return read_labels(in, expected_vertices);
}

std::vector<std::int64_t> load_labels(const std::filesystem::path& path) {
  return load_labels(path, 0);
}

void write_labels(std::span<const std::int32_t> labels, std::ostream& out) {
  for (std::size_t v = 0; v < labels.size(); ++v) out << v << '\t' << labels[v] << '\n';
}

void write_labels(std::span<const std::int32_t> labels, const std::filesystem::path& path) {
  auto out = open_output(path);
  write_labels(labels, out);
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace bmclust
