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

#ifndef BMCLUST_MODEL_QP_HPP_
#define BMCLUST_MODEL_QP_HPP_

#include <cstddef>
#include <vector>

#include "bmclust/anneal.hpp"
#include "bmclust/clustering.hpp"
#include "bmclust/distance.hpp"
#include "bmclust/graph.hpp"
#include "bmclust/quality.hpp"
#include "bmclust/rng.hpp"

namespace bmclust {

// One-hot Boltzmann encoding of quadratic distance minimization:
//
//   E(x) = sum_i sum_{j>i} sum_k x_ik x_jk d_ij,   sum_k x_ik = 1.
//
// The N x K unit matrix is held as a cluster id per vertex, so the one-hot
// constraint holds by construction. Each state caches
// sums[k * N + i] = sum_{j != i, c_j = k} d_ij, which makes a move's delta
// O(1) and its application O(N). Empty clusters are legal during search.
class QpModel {
 public:
  struct State {
    std::vector<ClusterId> assignment;
    std::vector<double> sums;  // cluster-major, K x N
  };
  struct Move {
    VertexId vertex;
    ClusterId to;
  };
  using Solution = std::vector<ClusterId>;

  // Throws InvalidArgument unless 1 <= k <= N. `dm` must outlive the model.
  QpModel(const DistanceMatrix& dm, std::size_t k);

  std::size_t dimension() const noexcept { return n_; }
  std::size_t clusters() const noexcept { return k_; }
  bool has_moves() const noexcept { return k_ > 1 && n_ > 0; }

  State random_state(Rng& rng) const;
  State make_state(std::span<const ClusterId> assignment) const;

  // Uniform vertex, uniform cluster other than its current one.
  Move propose(const State& s, Rng& rng) const;
  // Vertex `unit mod N`, uniform other cluster.
  Move propose_at(const State& s, Rng& rng, std::size_t unit) const;

  // sums[to][v] - sums[from][v]. Throws InvalidArgument if `to` is out of
  // range or equal to the current cluster.
  double delta(const State& s, const Move& m) const;
  void apply(State& s, const Move& m) const;
  void refresh(State& s) const;

  double energy(const State& s) const { return solution_energy(s.assignment); }
  Solution snapshot(const State& s) const { return s.assignment; }
  // Sum of d_ij over unordered same-cluster pairs, accumulated in (i, j)
  // lexicographic order so equal partitions give bit-identical energies.
  double solution_energy(const Solution& assignment) const;

 private:
  const DistanceMatrix* dm_;
  std::size_t n_;
  std::size_t k_;
};

double qp_energy(const DistanceMatrix& dm, std::span<const ClusterId> assignment);

struct QpResult {
  Clustering clustering;
  double energy = 0.0;
  QualityReport quality;
  AnnealResult<QpModel::Solution> anneal;
};

// Anneals the QP model over `dm` (the Jaccard matrix of `g`) and returns the
// compacted clustering of the best state found.
QpResult qp_solve(const Graph& g, const DistanceMatrix& dm, std::size_t k, const AnnealConfig& config);
QpResult qp_solve(const Graph& g, std::size_t k, const AnnealConfig& config);

}  // namespace bmclust

#endif  // BMCLUST_MODEL_QP_HPP_
