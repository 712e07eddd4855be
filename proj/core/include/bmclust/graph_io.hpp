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

#ifndef BMCLUST_GRAPH_IO_HPP_
#define BMCLUST_GRAPH_IO_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bmclust/graph.hpp"

namespace bmclust {

struct EdgeListOptions {
  // Compact arbitrary non-negative ids to 0..N-1 (in ascending id order)
  // instead of using N = 1 + max id.
  bool remap_ids = false;
  // Lower bound on N, e.g. to keep trailing isolated vertices named by a
  // labels file. Ignored when remapping.
  std::size_t min_vertex_count = 0;
};

struct LoadedGraph {
  Graph graph;
  // original_ids[v] is the id that dense vertex v had in the input file.
  std::vector<std::int64_t> original_ids;
};

// Edge-list text: one `u v [w]` per line, '#' starts a comment line, tabs or
// spaces separate fields. Throws ParseError (with line number) on malformed
// lines and self-loops, IoError when the file holds no edges.
LoadedGraph read_edge_list(std::istream& in, const EdgeListOptions& options = {});
LoadedGraph load_edge_list(const std::filesystem::path& path, const EdgeListOptions& options = {});

// Writes `u<TAB>v` per edge (plus `<TAB>w` when the graph is weighted).
void write_edge_list(const Graph& g, std::ostream& out);
void write_edge_list(const Graph& g, const std::filesystem::path& path);

// `dense<TAB>original` per vertex.
void write_id_mapping(std::span<const std::int64_t> original_ids, const std::filesystem::path& path);

struct GmlGraph {
  Graph graph;
  // Node `value` integers, present only when every node carries one.
  std::optional<std::vector<std::int64_t>> labels;
  // GML node id for each dense vertex.
  std::vector<std::int64_t> node_ids;
  std::vector<std::string> warnings;
};

// Reads the `graph [ node [ id .. value .. ] edge [ source .. target .. ] ]`
// subset of GML. Other keys are skipped. Throws IoError on malformed input.
GmlGraph read_gml_subset(std::istream& in);
GmlGraph load_gml_subset(const std::filesystem::path& path);

// Labels file: one `vertex<TAB>label` line per vertex; '#' comments allowed.
// Every vertex in [0, expected_vertices) must appear exactly once.
std::vector<std::int64_t> read_labels(std::istream& in, std::size_t expected_vertices);
std::vector<std::int64_t> load_labels(const std::filesystem::path& path, std::size_t expected_vertices);

// Reads a labels file without knowing N beforehand; N is 1 + max vertex.
std::vector<std::int64_t> load_labels(const std::filesystem::path& path);

void write_labels(std::span<const std::int32_t> labels, std::ostream& out);
void write_labels(std::span<const std::int32_t> labels, const std::filesystem::path& path);

}  // namespace bmclust

#endif  // BMCLUST_GRAPH_IO_HPP_
