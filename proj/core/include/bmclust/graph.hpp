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

#ifndef BMCLUST_GRAPH_HPP_
#define BMCLUST_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bmclust {

using VertexId = std::int32_t;

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  double weight = 1.0;
};

// Immutable simple undirected graph in compressed sparse row form.
//
// Vertex ids are dense in [0, vertex_count()). Neighbor lists are sorted and
// symmetric; there are no self-loops and no parallel edges. Edge weights are
// optional and only stored when at least one edge has weight != 1.
class Graph {
 public:
  Graph() = default;

  // Builds a graph over `n` vertices. Duplicate and reversed-duplicate edges
  // collapse to one edge, keeping the first weight seen. Throws
  // InvalidArgument on self-loops, out-of-range ids or non-positive weights.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t vertex_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return targets_.size() / 2; }

  std::span<const VertexId> neighbors(VertexId v) const noexcept {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }

  // Per-neighbor weights aligned with neighbors(v); empty when unweighted.
  std::span<const double> neighbor_weights(VertexId v) const noexcept {
    if (weights_.empty()) return {};
    return {weights_.data() + offsets_[v], weights_.data() + offsets_[v + 1]};
  }

  std::size_t degree(VertexId v) const noexcept {
    return static_cast<std::size_t>(offsets_[v + 1] - offsets_[v]);
  }

  // Sum of incident edge weights (equals degree() when unweighted).
  double weighted_degree(VertexId v) const noexcept;

  // Sum of edge weights over E (equals edge_count() when unweighted).
  double total_weight() const noexcept { return total_weight_; }

  bool is_weighted() const noexcept { return !weights_.empty(); }
  bool has_edge(VertexId u, VertexId v) const noexcept;

  // 0 when the edge is absent.
  double weight(VertexId u, VertexId v) const noexcept;

  // Every edge once, with u < v, in (u, v) lexicographic order.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::int64_t> offsets_;
  std::vector<VertexId> targets_;
  std::vector<double> weights_;
  double total_weight_ = 0.0;
};

// |E| / (0.5 N (N - 1)). Throws InvalidArgument("degenerate graph") if N < 2.
double density(const Graph& g);

}  // namespace bmclust

#endif  // BMCLUST_GRAPH_HPP_
