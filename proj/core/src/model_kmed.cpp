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

#include "bmclust/model_kmed.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "bmclust/error.hpp"

namespace bmclust {

Tradeoffs default_tradeoffs(std::size_t n, std::size_t k) {
  if (n == 0 || k == 0) throw InvalidArgument("default trade-offs need n >= 1 and K >= 1");
  return {2.0, 1.05 * static_cast<double>(k + 1) / static_cast<double>(n)};
}

KmedModel::KmedModel(const DistanceMatrix& dm, std::size_t k, Tradeoffs tradeoffs)
    : dm_(&dm), n_(dm.size()), k_(k), tradeoffs_(tradeoffs), row_sums_(dm.size(), 0.0) {
  if (k == 0 || k > n_) {
    throw InvalidArgument("K-medoids model needs 1 <= K <= N (K = " + std::to_string(k) +
                          ", N = " + std::to_string(n_) + ")");
  }
  if (!(tradeoffs.alpha > 0.0) || !(tradeoffs.beta > 0.0)) {
    throw InvalidArgument("K-medoids trade-offs alpha and beta must be positive");
  }
  for (std::size_t i = 0; i < n_; ++i) {
    const auto row = dm.row(i);
    row_sums_[i] = std::accumulate(row.begin(), row.end(), 0.0);
  }
}

KmedModel::State KmedModel::make_state(std::span<const VertexId> medoids) const {
  if (medoids.size() != k_) throw InvalidArgument("medoid set must have exactly K members");
  State s;
  s.is_medoid.assign(n_, 0);
  s.slot.assign(n_, 0);
  for (VertexId m : medoids) {
    if (m < 0 || static_cast<std::size_t>(m) >= n_) throw InvalidArgument("medoid id out of range");
    if (s.is_medoid[static_cast<std::size_t>(m)]) throw InvalidArgument("duplicate medoid");
    s.is_medoid[static_cast<std::size_t>(m)] = 1;
    s.slot[static_cast<std::size_t>(m)] = static_cast<std::uint32_t>(s.medoids.size());
    s.medoids.push_back(m);
  }
  for (std::size_t v = 0; v < n_; ++v) {
    if (s.is_medoid[v]) continue;
    s.slot[v] = static_cast<std::uint32_t>(s.others.size());
    s.others.push_back(static_cast<VertexId>(v));
  }
  return s;
}

KmedModel::State KmedModel::random_state(Rng& rng) const {
  std::vector<VertexId> all(n_);
  std::iota(all.begin(), all.end(), 0);
  // Partial Fisher-Yates: the first K entries are a uniform K-subset.
  for (std::size_t i = 0; i < k_; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(n_ - i));
    std::swap(all[i], all[j]);
  }
  return make_state(std::span<const VertexId>(all.data(), k_));
}

KmedModel::Move KmedModel::propose(const State& s, Rng& rng) const {
  const auto out = static_cast<std::uint32_t>(rng.below(s.medoids.size()));
  const auto in = static_cast<std::uint32_t>(rng.below(s.others.size()));
  return {out, in};
}

KmedModel::Move KmedModel::propose_at(const State& s, Rng& rng, std::size_t unit) const {
  const auto out = static_cast<std::uint32_t>(unit % s.medoids.size());
  const auto in = static_cast<std::uint32_t>(rng.below(s.others.size()));
  return {out, in};
}

double KmedModel::delta(const State& s, const Move& m) const {
  if (m.out_slot >= s.medoids.size() || m.in_slot >= s.others.size()) {
    throw InvalidArgument("K-medoids move slots out of range");
  }
  const auto u = static_cast<std::size_t>(s.medoids[m.out_slot]);
  const auto v = static_cast<std::size_t>(s.others[m.in_slot]);
  const auto du = dm_->row(u);
  const auto dv = dm_->row(v);
  double scatter = 0.0;
  for (VertexId med : s.medoids) {
    const auto w = static_cast<std::size_t>(med);
    if (w == u) continue;
    scatter += dv[w] - du[w];
  }
  return tradeoffs_.beta * (row_sums_[v] - row_sums_[u]) - tradeoffs_.alpha * scatter;
}

void KmedModel::apply(State& s, const Move& m) const {
  const VertexId u = s.medoids[m.out_slot];
  const VertexId v = s.others[m.in_slot];
  s.medoids[m.out_slot] = v;
  s.others[m.in_slot] = u;
  s.slot[static_cast<std::size_t>(v)] = m.out_slot;
  s.slot[static_cast<std::size_t>(u)] = m.in_slot;
  s.is_medoid[static_cast<std::size_t>(v)] = 1;
  s.is_medoid[static_cast<std::size_t>(u)] = 0;
}

KmedModel::Solution KmedModel::snapshot(const State& s) const {
  Solution sorted = s.medoids;
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

double KmedModel::energy(const State& s) const { return solution_energy(snapshot(s)); }

double KmedModel::solution_energy(const Solution& medoids) const {
  double centrality = 0.0;
  double scattering = 0.0;
  for (std::size_t a = 0; a < medoids.size(); ++a) {
    const auto i = static_cast<std::size_t>(medoids[a]);
    centrality += row_sums_[i];
    for (std::size_t b = a + 1; b < medoids.size(); ++b) {
      scattering += (*dm_)(i, static_cast<std::size_t>(medoids[b]));
    }
  }
  return tradeoffs_.beta * centrality - tradeoffs_.alpha * scattering;
}

double kmed_energy(const DistanceMatrix& dm, std::span<const VertexId> medoids, Tradeoffs tradeoffs) {
  const KmedModel model(dm, medoids.size(), tradeoffs);
  KmedModel::Solution sorted(medoids.begin(), medoids.end());
  std::sort(sorted.begin(), sorted.end());
  return model.solution_energy(sorted);
}

Clustering assign_to_medoids(const DistanceMatrix& dm, std::span<const VertexId> medoids) {
  if (medoids.empty()) throw InvalidArgument("medoid set is empty");
  std::vector<VertexId> sorted(medoids.begin(), medoids.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = dm.size();
  std::vector<std::int64_t> labels(n, -1);
  for (VertexId m : sorted) {
    if (m < 0 || static_cast<std::size_t>(m) >= n) throw InvalidArgument("medoid id out of range");
    labels[static_cast<std::size_t>(m)] = m;
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (labels[v] >= 0) continue;
    const auto row = dm.row(v);
    VertexId nearest = sorted.front();
    double best = row[static_cast<std::size_t>(nearest)];
    // Strict comparison over ascending ids keeps the lowest id on ties.
    for (VertexId m : sorted) {
      const double d = row[static_cast<std::size_t>(m)];
      if (d < best) {
        best = d;
        nearest = m;
      }
    }
    labels[v] = nearest;
  }
  return Clustering::from_labels(labels);
}

KmedResult kmed_solve(const Graph& g, const DistanceMatrix& dm, std::size_t k,
                      const AnnealConfig& config, std::optional<Tradeoffs> tradeoffs) {
  if (dm.size() != g.vertex_count()) throw InvalidArgument("distance matrix does not match graph");
  KmedResult out;
  out.tradeoffs = tradeoffs.value_or(default_tradeoffs(g.vertex_count(), k));
  const KmedModel model(dm, k, out.tradeoffs);
  out.anneal = anneal(model, config);
  out.medoids = out.anneal.best;
  out.energy = out.anneal.best_energy;
  out.clustering = assign_to_medoids(dm, out.medoids);
  out.quality = quality_report(g, out.clustering);
  return out;
}

KmedResult kmed_solve(const Graph& g, std::size_t k, const AnnealConfig& config,
                      std::optional<Tradeoffs> tradeoffs) {
  const DistanceMatrix dm = jaccard_matrix(g, config.threads);
  return kmed_solve(g, dm, k, config, tradeoffs);
}

}  // namespace bmclust
