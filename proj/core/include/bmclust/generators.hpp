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

#ifndef BMCLUST_GENERATORS_HPP_
#define BMCLUST_GENERATORS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "bmclust/clustering.hpp"
#include "bmclust/graph.hpp"

namespace bmclust {

// Stochastic block model with one intra-block and one inter-block edge
// probability. Blocks occupy contiguous vertex ranges in order.
struct BlockSpec {
  std::vector<std::size_t> sizes;
  double p_intra = 0.0;
  double p_inter = 0.0;
  std::uint64_t seed = 0;
};

struct GeneratedGraph {
  Graph graph;
  Clustering truth;
  BlockSpec spec;
  std::string model;  // "ppm" or "sbm"
};

// Every vertex pair is an independent Bernoulli draw. Pair (a, b) of blocks
// uses its own stream derived from (seed, a, b), so output is identical
// bit-for-bit for identical specs regardless of how blocks are scheduled.
GeneratedGraph generate_sbm(const BlockSpec& spec);

// Planted partition: `k` blocks of `size` vertices.
GeneratedGraph generate_ppm(std::size_t k, std::size_t size, double p_intra, double p_inter,
                            std::uint64_t seed);

// `count` sizes drawn uniformly from [lo, hi].
std::vector<std::size_t> sample_block_sizes(std::size_t count, std::size_t lo, std::size_t hi,
                                            std::uint64_t seed);

// Reduced-scale variant of the large SBM benchmark: 10 blocks with sizes in
// [35, 200] (about 1,200 vertices). Sizes depend only on the seed, so all
// probability settings with one seed share the same block structure.
inline constexpr std::size_t kDeskBlocks = 10;
inline constexpr std::size_t kDeskMinSize = 35;
inline constexpr std::size_t kDeskMaxSize = 200;
BlockSpec desk_sbm_spec(double p_intra, double p_inter, std::uint64_t seed);

struct GridPoint {
  std::string id;
  double p_intra;
  double p_inter;
};

// 5 x 50 planted-partition settings G1..G3.
std::vector<GridPoint> ppm_grid();
// {0.9, 0.85, 0.8} x {0.05, 0.075, 0.1} settings G4..G12.
std::vector<GridPoint> sbm_grid();

void to_json(nlohmann::json& j, const BlockSpec& spec);

// Writes <prefix>.edges, <prefix>.labels and <prefix>.json (spec, seed, RNG
// identity, vertex and edge counts).
void write_generated(const GeneratedGraph& gen, const std::filesystem::path& prefix);

}  // namespace bmclust

#endif  // BMCLUST_GENERATORS_HPP_
