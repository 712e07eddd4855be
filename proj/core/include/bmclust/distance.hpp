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

#ifndef BMCLUST_DISTANCE_HPP_
#define BMCLUST_DISTANCE_HPP_

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "bmclust/graph.hpp"

namespace bmclust {

// Dense symmetric all-pairs distance matrix, stored as a full square in
// row-major order. d(i, i) = 0 and every entry lies in [0, 1].
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), values_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }

  double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * n_ + j]; }

  std::span<const double> row(std::size_t i) const noexcept {
    return {values_.data() + i * n_, n_};
  }

  // Sets both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double d) noexcept {
    values_[i * n_ + j] = d;
    values_[j * n_ + i] = d;
  }

  std::span<const double> values() const noexcept { return values_; }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

// d_ij = 1 - |N(i) ∩ N(j)| / |N(i) ∪ N(j)| over open neighborhoods. Two
// vertices with empty neighborhoods are at distance 1; the diagonal is 0.
// Rows are distributed over `threads` workers (0 = hardware concurrency).
DistanceMatrix jaccard_matrix(const Graph& g, unsigned threads = 0);

// Single-pair Jaccard distance (same conventions as jaccard_matrix, except
// that i == j yields 0 directly).
double jaccard_distance(const Graph& g, VertexId i, VertexId j);

// Binary dump: uint64 n followed by n*n IEEE-754 doubles, all little-endian.
void save_distance_matrix(const DistanceMatrix& dm, const std::filesystem::path& path);
DistanceMatrix load_distance_matrix(const std::filesystem::path& path);

}  // namespace bmclust

#endif  // BMCLUST_DISTANCE_HPP_
