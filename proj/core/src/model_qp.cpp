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

#include "bmclust/model_qp.hpp"

#include <string>

#include "bmclust/error.hpp"

namespace bmclust {

QpModel::QpModel(const DistanceMatrix& dm, std::size_t k) : dm_(&dm), n_(dm.size()), k_(k) {
  if (k == 0 || k > n_) {
    throw InvalidArgument("QP model needs 1 <= K <= N (K = " + std::to_string(k) +
                          ", N = " + std::to_string(n_) + ")");
  }
}

QpModel::State QpModel::make_state(std::span<const ClusterId> assignment) const {
  if (assignment.size() != n_) throw InvalidArgument("assignment length differs from N");
  State s;
  s.assignment.assign(assignment.begin(), assignment.end());
  for (ClusterId c : s.assignment) {
    if (c < 0 || static_cast<std::size_t>(c) >= k_) throw InvalidArgument("cluster id out of range");
  }
  refresh(s);
  return s;
}

QpModel::State QpModel::random_state(Rng& rng) const {
  std::vector<ClusterId> assignment(n_);
  for (auto& c : assignment) c = static_cast<ClusterId>(rng.below(k_));
  return make_state(assignment);
}

void QpModel::refresh(State& s) const {
  s.sums.assign(k_ * n_, 0.0);
  for (std::size_t j = 0; j < n_; ++j) {
    double* row = s.sums.data() + static_cast<std::size_t>(s.assignment[j]) * n_;
    const auto dj = dm_->row(j);
    for (std::size_t i = 0; i < n_; ++i) row[i] += dj[i];
  }
  // d_ii = 0, so vertex i never contributes to its own sums.
}

QpModel::Move QpModel::propose(const State& s, Rng& rng) const {
  return propose_at(s, rng, static_cast<std::size_t>(rng.below(n_)));
}

QpModel::Move QpModel::propose_at(const State& s, Rng& rng, std::size_t unit) const {
  const auto v = static_cast<VertexId>(unit % n_);
  // Uniform over the K - 1 other clusters.
  auto to = static_cast<ClusterId>(rng.below(k_ - 1));
  if (to >= s.assignment[static_cast<std::size_t>(v)]) ++to;
  return {v, to};
}

double QpModel::delta(const State& s, const Move& m) const {
  const auto v = static_cast<std::size_t>(m.vertex);
  const ClusterId from = s.assignment[v];
  if (m.to < 0 || static_cast<std::size_t>(m.to) >= k_ || m.to == from) {
    throw InvalidArgument("QP move must target a different cluster in [0, K)");
  }
  return s.sums[static_cast<std::size_t>(m.to) * n_ + v] -
         s.sums[static_cast<std::size_t>(from) * n_ + v];
}

void QpModel::apply(State& s, const Move& m) const {
  const auto v = static_cast<std::size_t>(m.vertex);
  const auto from = static_cast<std::size_t>(s.assignment[v]);
  const auto to = static_cast<std::size_t>(m.to);
  double* from_row = s.sums.data() + from * n_;
  double* to_row = s.sums.data() + to * n_;
  const double* dv = dm_->row(v).data();
  for (std::size_t j = 0; j < n_; ++j) {
    from_row[j] -= dv[j];
    to_row[j] += dv[j];
  }
  s.assignment[v] = m.to;
}

double QpModel::solution_energy(const Solution& assignment) const {
  return qp_energy(*dm_, assignment);
}

double qp_energy(const DistanceMatrix& dm, std::span<const ClusterId> assignment) {
  const std::size_t n = dm.size();
  if (assignment.size() != n) throw InvalidArgument("assignment length differs from N");
  double e = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = dm.row(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (assignment[i] == assignment[j]) e += row[j];
    }
  }
  return e;
}

QpResult qp_solve(const Graph& g, const DistanceMatrix& dm, std::size_t k, const AnnealConfig& config) {
  if (dm.size() != g.vertex_count()) throw InvalidArgument("distance matrix does not match graph");
  const QpModel model(dm, k);
  QpResult out;
  out.anneal = anneal(model, config);
  out.energy = out.anneal.best_energy;
  out.clustering = Clustering::from_labels(std::span<const ClusterId>(out.anneal.best));
  out.quality = quality_report(g, out.clustering);
  return out;
}

QpResult qp_solve(const Graph& g, std::size_t k, const AnnealConfig& config) {
  const DistanceMatrix dm = jaccard_matrix(g, config.threads);
  return qp_solve(g, dm, k, config);
}

}  // namespace bmclust
