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

#ifndef BMCLUST_CLUSTERING_HPP_
#define BMCLUST_CLUSTERING_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bmclust/graph.hpp"

namespace bmclust {

using ClusterId = std::int32_t;

// Total, mutually exclusive assignment of vertices to clusters 0..C-1.
//
// Labels are canonical: cluster ids are numbered in order of first
// appearance when scanning vertices 0, 1, ..., so two clusterings describing
// the same partition compare equal and serialize identically.
class Clustering {
 public:
  Clustering() = default;

  static Clustering from_labels(std::span<const std::int64_t> raw);
  static Clustering from_labels(std::span<const ClusterId> raw);

  static Clustering single_cluster(std::size_t n);
  static Clustering singletons(std::size_t n);

  std::size_t vertex_count() const noexcept { return labels_.size(); }
  std::size_t cluster_count() const noexcept { return cluster_count_; }

  ClusterId operator[](std::size_t v) const noexcept { return labels_[v]; }
  std::span<const ClusterId> labels() const noexcept { return labels_; }

  std::vector<std::size_t> sizes() const;
  // Vertex ids of each cluster, ascending.
  std::vector<std::vector<VertexId>> members() const;

  friend bool operator==(const Clustering&, const Clustering&) = default;

 private:
  std::vector<ClusterId> labels_;
  std::size_t cluster_count_ = 0;
};

}  // namespace bmclust

#endif  // BMCLUST_CLUSTERING_HPP_
