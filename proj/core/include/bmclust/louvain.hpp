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

#ifndef BMCLUST_LOUVAIN_HPP_
#define BMCLUST_LOUVAIN_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "bmclust/clustering.hpp"
#include "bmclust/graph.hpp"

namespace bmclust {

// Snapshot emitted after every local-moving pass.
struct LouvainPass {
  std::size_t level = 0;
  std::size_t pass = 0;
  Clustering flat;            // partition of the original vertices
  double modularity = 0.0;    // incrementally tracked
};

struct LouvainOptions {
  std::uint64_t seed = 1;
  // A local move is taken only if it raises modularity by more than this.
  double min_gain = 1e-7;
  std::size_t max_levels = 64;
  std::function<void(const LouvainPass&)> observer;
};

struct LouvainResult {
  Clustering clustering;
  double modularity = 0.0;  // incrementally tracked value for `clustering`
  std::size_t levels = 0;
  std::vector<double> level_modularity;
};

// Greedy two-phase modularity maximization (local moves to the best
// neighbouring community, then community aggregation) with resolution 1.
// Vertex scan order is reshuffled from `seed` every pass. Throws
// InvalidArgument on an edgeless graph.
LouvainResult louvain(const Graph& g, const LouvainOptions& options = {});

Clustering louvain_cluster(const Graph& g, std::uint64_t seed);

}  // namespace bmclust

#endif  // BMCLUST_LOUVAIN_HPP_
