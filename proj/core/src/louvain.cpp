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

#include "bmclust/louvain.hpp"

#include <numeric>
#include <utility>

#include "bmclust/error.hpp"
#include "bmclust/rng.hpp"

namespace bmclust {
namespace {

// Weighted graph over communities of the previous level. `self` holds the
// ordered-pair weight sum inside each super-vertex (each internal edge counted
// twice), so degree[i] = self[i] + sum of adj weights and two_m is invariant
// across levels.
struct AggregateGraph {
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adj;
  std::vector<double> self;
  std::vector<double> degree;
  double two_m = 0.0;

  std::size_t size() const { return adj.size(); }
};

AggregateGraph from_graph(const Graph& g) {
  AggregateGraph a;
  const std::size_t n = g.vertex_count();
  a.adj.resize(n);
  a.self.assign(n, 0.0);
  a.degree.assign(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    const auto nb = g.neighbors(static_cast<VertexId>(v));
    const auto w = g.neighbor_weights(static_cast<VertexId>(v));
    a.adj[v].reserve(nb.size());
    for (std::size_t k = 0; k < nb.size(); ++k) {
      const double weight = w.empty() ? 1.0 : w[k];
      a.adj[v].emplace_back(static_cast<std::uint32_t>(nb[k]), weight);
      a.degree[v] += weight;
    }
  }
  a.two_m = 2.0 * g.total_weight();
  return a;
}

// Renumbers `community` densely (first appearance order) and returns the count.
std::size_t compact(std::vector<std::uint32_t>& community) {
  std::vector<std::uint32_t> remap(community.size(), UINT32_MAX);
  std::uint32_t next = 0;
  for (auto& c : community) {
    if (remap[c] == UINT32_MAX) remap[c] = next++;
    c = remap[c];
  }
  return next;
}

AggregateGraph aggregate(const AggregateGraph& g, const std::vector<std::uint32_t>& community,
                         std::size_t count) {
  AggregateGraph a;
  a.adj.resize(count);
  a.self.assign(count, 0.0);
  a.degree.assign(count, 0.0);
  a.two_m = g.two_m;
  std::vector<double> weight_to(count, 0.0);
  std::vector<std::uint32_t> touched;
  std::vector<std::vector<std::uint32_t>> members(count);
  for (std::uint32_t v = 0; v < g.size(); ++v) members[community[v]].push_back(v);
  for (std::uint32_t c = 0; c < count; ++c) {
    for (std::uint32_t v : members[c]) {
      a.self[c] += g.self[v];
      a.degree[c] += g.degree[v];
      for (const auto& [u, w] : g.adj[v]) {
        const std::uint32_t cu = community[u];
        if (cu == c) {
          a.self[c] += w;
        } else {
          if (weight_to[cu] == 0.0) touched.push_back(cu);
          weight_to[cu] += w;
        }
      }
    }
    a.adj[c].reserve(touched.size());
    for (std::uint32_t cu : touched) {
      a.adj[c].emplace_back(cu, weight_to[cu]);
      weight_to[cu] = 0.0;
    }
    touched.clear();
  }
  return a;
}

}  // namespace

LouvainResult louvain(const Graph& g, const LouvainOptions& options) {
  if (!(g.total_weight() > 0.0)) throw InvalidArgument("Louvain needs at least one edge");
  Rng rng(options.seed);
  AggregateGraph level_graph = from_graph(g);
  const double two_m = level_graph.two_m;
  const double m = two_m / 2.0;

  // flat[v]: super-vertex of original vertex v at the current level.
  std::vector<std::uint32_t> flat(g.vertex_count());
  std::iota(flat.begin(), flat.end(), 0u);

  double q = 0.0;
  for (std::size_t i = 0; i < level_graph.size(); ++i) {
    const double k = level_graph.degree[i] / two_m;
    q += level_graph.self[i] / two_m - k * k;
  }

  LouvainResult result;
  auto flat_clustering = [&](const std::vector<std::uint32_t>& community) {
    std::vector<ClusterId> labels(flat.size());
    for (std::size_t v = 0; v < flat.size(); ++v) {
      labels[v] = static_cast<ClusterId>(community[flat[v]]);
    }
    return Clustering::from_labels(labels);
  };

  for (std::size_t level = 0; level < options.max_levels; ++level) {
    const std::size_t n = level_graph.size();
    std::vector<std::uint32_t> community(n);
    std::iota(community.begin(), community.end(), 0u);
    std::vector<double> total(level_graph.degree);
    std::vector<double> weight_to(n, 0.0);
    std::vector<std::uint32_t> neighbour_communities;
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);

    bool level_improved = false;
    for (std::size_t pass = 0;; ++pass) {
      rng.shuffle(std::span<std::uint32_t>(order));
      bool moved = false;
      for (std::uint32_t i : order) {
        const double k_i = level_graph.degree[i];
        const std::uint32_t old = community[i];
        for (const auto& [j, w] : level_graph.adj[i]) {
          const std::uint32_t c = community[j];
          if (weight_to[c] == 0.0) neighbour_communities.push_back(c);
          weight_to[c] += w;
        }
        total[old] -= k_i;
        auto gain = [&](std::uint32_t c) { return weight_to[c] - total[c] * k_i / two_m; };
        const double base = gain(old);
        std::uint32_t best = old;
        double best_gain = base;
        for (std::uint32_t c : neighbour_communities) {
          const double gc = gain(c);
          if (gc > best_gain) {
            best_gain = gc;
            best = c;
          }
        }
        const double delta_q = (best_gain - base) / m;
        if (best != old && delta_q > options.min_gain) {
          community[i] = best;
          q += delta_q;
          moved = true;
        }
        total[community[i]] += k_i;
        for (std::uint32_t c : neighbour_communities) weight_to[c] = 0.0;
        neighbour_communities.clear();
      }
      if (!moved) break;
      level_improved = true;
      if (options.observer) options.observer({level, pass, flat_clustering(community), q});
    }

    if (!level_improved) break;
    const std::size_t count = compact(community);
    for (auto& f : flat) f = community[f];
    level_graph = aggregate(level_graph, community, count);
    result.level_modularity.push_back(q);
    ++result.levels;
    if (count == 1) break;
  }

  std::vector<std::uint32_t> identity(level_graph.size());
  std::iota(identity.begin(), identity.end(), 0u);
  result.clustering = flat_clustering(identity);
  result.modularity = q;
  return result;
}

Clustering louvain_cluster(const Graph& g, std::uint64_t seed) {
  LouvainOptions options;
  options.seed = seed;
  return louvain(g, options).clustering;
}

}  // namespace bmclust
