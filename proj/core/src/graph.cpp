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

#include "bmclust/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bmclust/error.hpp"

namespace bmclust {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  struct Half {
    VertexId from;
    VertexId to;
    double weight;
    std::size_t order;
  };
  std::vector<Half> halves;
  halves.reserve(edges.size() * 2);
  bool weighted = false;
  for (std::size_t idx = 0; idx < edges.size(); ++idx) {
    const Edge& e = edges[idx];
    if (e.u < 0 || e.v < 0 || static_cast<std::size_t>(e.u) >= n ||
        static_cast<std::size_t>(e.v) >= n) {
      throw InvalidArgument("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                            ") references a vertex outside [0, " + std::to_string(n) + ")");
    }
    if (e.u == e.v) {
      throw InvalidArgument("self-loop on vertex " + std::to_string(e.u));
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw InvalidArgument("edge weights must be positive and finite");
    }
    weighted = weighted || e.weight != 1.0;
    halves.push_back({e.u, e.v, e.weight, idx});
    halves.push_back({e.v, e.u, e.weight, idx});
  }
  std::stable_sort(halves.begin(), halves.end(), [](const Half& a, const Half& b) {
    return a.from != b.from ? a.from < b.from : a.to < b.to;
  });
  // Duplicates keep the earliest input edge; stable_sort preserves input order
  // among equal keys, and both halves of one edge share the same order.
  halves.erase(std::unique(halves.begin(), halves.end(),
                           [](const Half& a, const Half& b) {
                             return a.from == b.from && a.to == b.to;
                           }),
               halves.end());

  Graph g;
  g.offsets_.assign(n + 1, 0);
  g.targets_.reserve(halves.size());
  if (weighted) g.weights_.reserve(halves.size());
  for (const Half& h : halves) {
    ++g.offsets_[static_cast<std::size_t>(h.from) + 1];
    g.targets_.push_back(h.to);
    if (weighted) g.weights_.push_back(h.weight);
  }
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];

  double total = 0.0;
  for (const Half& h : halves) {
    if (h.from < h.to) total += h.weight;
  }
  g.total_weight_ = total;
  return g;
}

double Graph::weighted_degree(VertexId v) const noexcept {
  if (weights_.empty()) return static_cast<double>(degree(v));
  double sum = 0.0;
  for (double w : neighbor_weights(v)) sum += w;
  return sum;
}

bool Graph::has_edge(VertexId u, VertexId v) const noexcept {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

double Graph::weight(VertexId u, VertexId v) const noexcept {
  const auto nb = neighbors(u);
  const auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return 0.0;
  if (weights_.empty()) return 1.0;
  return weights_[static_cast<std::size_t>(offsets_[u] + (it - nb.begin()))];
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  const auto n = static_cast<VertexId>(vertex_count());
  for (VertexId u = 0; u < n; ++u) {
    const auto nb = neighbors(u);
    const auto w = neighbor_weights(u);
    for (std::size_t k = 0; k < nb.size(); ++k) {
      if (nb[k] > u) out.push_back({u, nb[k], w.empty() ? 1.0 : w[k]});
    }
  }
  return out;
}

double density(const Graph& g) {
  const auto n = static_cast<double>(g.vertex_count());
  if (g.vertex_count() < 2) throw InvalidArgument("degenerate graph: density needs N >= 2");
  return static_cast<double>(g.edge_count()) / (0.5 * n * (n - 1.0));
}

}  // namespace bmclust
