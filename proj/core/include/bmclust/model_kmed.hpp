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

#ifndef BMCLUST_MODEL_KMED_HPP_
#define BMCLUST_MODEL_KMED_HPP_

#include <cstddef>
#include <utility>
#include <vector>

#include "bmclust/anneal.hpp"
#include "bmclust/clustering.hpp"
#include "bmclust/distance.hpp"
#include "bmclust/graph.hpp"
#include "bmclust/quality.hpp"
#include "bmclust/rng.hpp"

namespace bmclust {

struct Tradeoffs {
  double alpha = 2.0;  // scattering weight
  double beta = 0.0;   // centrality weight
};

// alpha = 2, beta = 1.05 (K + 1) / n.
Tradeoffs default_tradeoffs(std::size_t n, std::size_t k);

// K-hot Boltzmann encoding of binary quadratic K-medoids:
//
//   E(z) = beta sum_i z_i r_i - alpha sum_{i<j} z_i z_j d_ij,   sum_i z_i = K,
//
// with r_i = sum_{j != i} d_ij. Exactly K units are on at every step: a move
// swaps one medoid out for one non-medoid, so the cardinality constraint is
// structural and carries no penalty term.
class KmedModel {
 public:
  struct State {
    std::vector<VertexId> medoids;   // exactly K
    std::vector<VertexId> others;    // the N - K non-medoids
    std::vector<std::uint32_t> slot;  // index of each vertex in medoids or others
    std::vector<char> is_medoid;
  };
  // Positions into State::medoids and State::others.
  struct Move {
    std::uint32_t out_slot;
    std::uint32_t in_slot;
  };
  using Solution = std::vector<VertexId>;  // sorted medoid ids

  // Throws InvalidArgument unless 1 <= k <= N and alpha, beta > 0.
  KmedModel(const DistanceMatrix& dm, std::size_t k, Tradeoffs tradeoffs);

  std::size_t dimension() const noexcept { return n_; }
  std::size_t medoid_count() const noexcept { return k_; }
  bool has_moves() const noexcept { return k_ < n_; }
  const Tradeoffs& tradeoffs() const noexcept { return tradeoffs_; }
  std::span<const double> row_sums() const noexcept { return row_sums_; }

  State random_state(Rng& rng) const;
  State make_state(std::span<const VertexId> medoids) const;

  // Uniform medoid out, uniform non-medoid in.
  Move propose(const State& s, Rng& rng) const;
  // Medoid slot `unit mod K` out, uniform non-medoid in.
  Move propose_at(const State& s, Rng& rng, std::size_t unit) const;

  // beta (r_v - r_u) - alpha sum_{m in medoids, m != u} (d_vm - d_um), O(K).
  double delta(const State& s, const Move& m) const;
  void apply(State& s, const Move& m) const;

  double energy(const State& s) const;
  Solution snapshot(const State& s) const;
  double solution_energy(const Solution& medoids) const;

 private:
  const DistanceMatrix* dm_;
  std::size_t n_;
  std::size_t k_;
  Tradeoffs tradeoffs_;
  std::vector<double> row_sums_;
};

double kmed_energy(const DistanceMatrix& dm, std::span<const VertexId> medoids, Tradeoffs tradeoffs);

// Labels every vertex with its nearest medoid; a medoid labels itself and
// ties go to the lowest medoid id. Throws InvalidArgument on an empty set.
Clustering assign_to_medoids(const DistanceMatrix& dm, std::span<const VertexId> medoids);

struct KmedResult {
  Clustering clustering;
  std::vector<VertexId> medoids;  // sorted
  double energy = 0.0;
  Tradeoffs tradeoffs;
  QualityReport quality;
  AnnealResult<KmedModel::Solution> anneal;
};

// Anneals over medoid sets, assigns vertices to the best set and reports
// quality. `tradeoffs` defaults to default_tradeoffs(N, k).
KmedResult kmed_solve(const Graph& g, const DistanceMatrix& dm, std::size_t k,
                      const AnnealConfig& config, std::optional<Tradeoffs> tradeoffs = std::nullopt);
KmedResult kmed_solve(const Graph& g, std::size_t k, const AnnealConfig& config,
                      std::optional<Tradeoffs> tradeoffs = std::nullopt);

}  // namespace bmclust

#endif  // BMCLUST_MODEL_KMED_HPP_
