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

#include "bmclust/quality.hpp"

#include <cstdint>
#include <string>
#include <map>

#include <nlohmann/json.hpp>

#include "bmclust/error.hpp"

namespace bmclust {
namespace {

void check_alignment(const Graph& g, const Clustering& cl) {
  if (g.vertex_count() != cl.vertex_count()) {
    throw InvalidArgument("clustering covers " + std::to_string(cl.vertex_count()) +
                          " vertices but the graph has " + std::to_string(g.vertex_count()));
  }
}

void check_cluster(const Clustering& cl, ClusterId c) {
  if (c < 0 || static_cast<std::size_t>(c) >= cl.cluster_count()) {
    throw InvalidArgument("unknown cluster id " + std::to_string(c));
  }
}

double intra_from_counts(std::size_t edges, std::size_t size) {
  if (size <= 1) return 1.0;
  const auto n = static_cast<double>(size);
  return static_cast<double>(edges) / (0.5 * n * (n - 1.0));
}

}  // namespace

double intra_density(const Graph& g, const Clustering& cl, ClusterId i) {
  check_alignment(g, cl);
  check_cluster(cl, i);
  std::size_t size = 0;
  std::size_t edges = 0;
  for (std::size_t v = 0; v < cl.vertex_count(); ++v) {
    if (cl[v] != i) continue;
    ++size;
    for (VertexId u : g.neighbors(static_cast<VertexId>(v))) {
      if (static_cast<std::size_t>(u) > v && cl[static_cast<std::size_t>(u)] == i) ++edges;
    }
  }
  return intra_from_counts(edges, size);
}

double inter_density(const Graph& g, const Clustering& cl, ClusterId i, ClusterId j) {
  check_alignment(g, cl);
  check_cluster(cl, i);
  check_cluster(cl, j);
  if (i == j) throw InvalidArgument("inter-cluster density needs two distinct clusters");
  std::size_t ni = 0;
  std::size_t nj = 0;
  std::size_t crossing = 0;
  for (std::size_t v = 0; v < cl.vertex_count(); ++v) {
    if (cl[v] == j) ++nj;
    if (cl[v] != i) continue;
    ++ni;
    for (VertexId u : g.neighbors(static_cast<VertexId>(v))) {
      if (cl[static_cast<std::size_t>(u)] == j) ++crossing;
    }
  }
  return static_cast<double>(crossing) / (static_cast<double>(ni) * static_cast<double>(nj));
}

double modularity(const Graph& g, const Clustering& cl) {
  check_alignment(g, cl);
  const double two_m = 2.0 * g.total_weight();
  if (!(two_m > 0.0)) throw InvalidArgument("modularity is undefined on an edgeless graph");
  std::vector<double> internal(cl.cluster_count(), 0.0);  // sum of A_ij over ordered pairs
  std::vector<double> degree(cl.cluster_count(), 0.0);
  for (std::size_t v = 0; v < cl.vertex_count(); ++v) {
    const auto c = static_cast<std::size_t>(cl[v]);
    const auto nb = g.neighbors(static_cast<VertexId>(v));
    const auto w = g.neighbor_weights(static_cast<VertexId>(v));
    for (std::size_t k = 0; k < nb.size(); ++k) {
      const double a = w.empty() ? 1.0 : w[k];
      degree[c] += a;
      if (static_cast<std::size_t>(cl[static_cast<std::size_t>(nb[k])]) == c) internal[c] += a;
    }
  }
  double q = 0.0;
  for (std::size_t c = 0; c < internal.size(); ++c) {
    q += internal[c] / two_m - (degree[c] / two_m) * (degree[c] / two_m);
  }
  return q;
}

QualityReport quality_report(const Graph& g, const Clustering& cl) {
  check_alignment(g, cl);
  QualityReport r;
  r.density = density(g);
  const std::size_t c_count = cl.cluster_count();
  r.clusters = c_count;

  const auto sizes = cl.sizes();
  std::vector<std::size_t> intra_edges(c_count, 0);
  // Crossing-edge counts keyed by (lo * C + hi); pairs absent from the map
  // contribute zero to the mean.
  std::map<std::uint64_t, std::size_t> crossing;
  for (const Edge& e : g.edges()) {
    const auto a = static_cast<std::uint64_t>(cl[static_cast<std::size_t>(e.u)]);
    const auto b = static_cast<std::uint64_t>(cl[static_cast<std::size_t>(e.v)]);
    if (a == b) {
      ++intra_edges[a];
    } else {
      ++crossing[std::min(a, b) * c_count + std::max(a, b)];
    }
  }

  r.per_cluster_intra.resize(c_count);
  double intra_sum = 0.0;
  for (std::size_t c = 0; c < c_count; ++c) {
    r.per_cluster_intra[c] = intra_from_counts(intra_edges[c], sizes[c]);
    intra_sum += r.per_cluster_intra[c];
    if (sizes[c] == 1) ++r.singletons;
  }
  r.mean_intra = c_count == 0 ? 0.0 : intra_sum / static_cast<double>(c_count);

  if (c_count <= 1) {
    r.mean_inter = 0.0;
    r.degenerate = true;
  } else {
    double inter_sum = 0.0;
    for (const auto& [key, count] : crossing) {
      const auto a = key / c_count;
      const auto b = key % c_count;
      inter_sum += static_cast<double>(count) /
                   (static_cast<double>(sizes[a]) * static_cast<double>(sizes[b]));
    }
    const double pairs = 0.5 * static_cast<double>(c_count) * static_cast<double>(c_count - 1);
    r.mean_inter = inter_sum / pairs;
  }

  r.inequality_lower = r.mean_inter < r.density;
  r.inequality_upper = r.density < r.mean_intra;
  r.modularity = g.edge_count() > 0 ? modularity(g, cl) : 0.0;
  return r;
}

void to_json(nlohmann::json& j, const QualityReport& r) {
  j = nlohmann::json{{"density", r.density},
                     {"mean_intra", r.mean_intra},
                     {"mean_inter", r.mean_inter},
                     {"modularity", r.modularity},
                     {"inequality_lower", r.inequality_lower},
                     {"inequality_upper", r.inequality_upper},
                     {"clusters", r.clusters},
                     {"singletons", r.singletons},
                     {"degenerate", r.degenerate},
                     {"per_cluster_intra", r.per_cluster_intra}};
}

}  // namespace bmclust
