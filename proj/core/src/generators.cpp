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

#include "bmclust/generators.hpp"

#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "bmclust/error.hpp"
#include "bmclust/graph_io.hpp"
#include "bmclust/rng.hpp"

namespace bmclust {
namespace {

void validate(const BlockSpec& spec) {
  if (spec.sizes.empty()) throw InvalidArgument("block spec needs at least one block");
  for (std::size_t s : spec.sizes) {
    if (s == 0) throw InvalidArgument("block sizes must be >= 1");
  }
  auto valid_p = [](double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; };
  if (!valid_p(spec.p_intra) || !valid_p(spec.p_inter)) {
    throw InvalidArgument("edge probabilities must lie in [0, 1]");
  }
}

}  // namespace

GeneratedGraph generate_sbm(const BlockSpec& spec) {
  validate(spec);
  const std::size_t blocks = spec.sizes.size();
  std::vector<std::size_t> start(blocks + 1, 0);
  for (std::size_t b = 0; b < blocks; ++b) start[b + 1] = start[b] + spec.sizes[b];
  const std::size_t n = start[blocks];
  if (n > static_cast<std::size_t>(std::numeric_limits<VertexId>::max())) {
    throw InvalidArgument("block spec has too many vertices");
  }

  std::vector<Edge> edges;
  for (std::size_t a = 0; a < blocks; ++a) {
    for (std::size_t b = a; b < blocks; ++b) {
      const double p = a == b ? spec.p_intra : spec.p_inter;
      if (p <= 0.0) continue;
      Rng rng(derive_seed(spec.seed, a * blocks + b));
      for (std::size_t u = start[a]; u < start[a + 1]; ++u) {
        const std::size_t first = a == b ? u + 1 : start[b];
        for (std::size_t v = first; v < start[b + 1]; ++v) {
          if (rng.bernoulli(p)) {
            edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), 1.0});
          }
        }
      }
    }
  }

  std::vector<ClusterId> labels(n);
  for (std::size_t b = 0; b < blocks; ++b) {
    for (std::size_t v = start[b]; v < start[b + 1]; ++v) labels[v] = static_cast<ClusterId>(b);
  }
  return GeneratedGraph{Graph::from_edges(n, edges), Clustering::from_labels(labels), spec, "sbm"};
}

GeneratedGraph generate_ppm(std::size_t k, std::size_t size, double p_intra, double p_inter,
                            std::uint64_t seed) {
  if (k == 0 || size == 0 || k * size < 2) {
    throw InvalidArgument("planted partition needs k * size >= 2");
  }
  GeneratedGraph gen = generate_sbm(BlockSpec{std::vector<std::size_t>(k, size), p_intra, p_inter, seed});
  gen.model = "ppm";
  return gen;
}

std::vector<std::size_t> sample_block_sizes(std::size_t count, std::size_t lo, std::size_t hi,
                                            std::uint64_t seed) {
  if (lo == 0 || lo > hi) throw InvalidArgument("block size range must satisfy 1 <= lo <= hi");
  Rng rng(derive_seed(seed, 0xb10c5123ULL));
  std::vector<std::size_t> sizes(count);
  for (auto& s : sizes) s = lo + static_cast<std::size_t>(rng.below(hi - lo + 1));
  return sizes;
}

BlockSpec desk_sbm_spec(double p_intra, double p_inter, std::uint64_t seed) {
  return BlockSpec{sample_block_sizes(kDeskBlocks, kDeskMinSize, kDeskMaxSize, seed), p_intra,
                   p_inter, seed};
}

std::vector<GridPoint> ppm_grid() {
  return {{"G1", 0.9, 0.1}, {"G2", 0.85, 0.15}, {"G3", 0.8, 0.2}};
}

std::vector<GridPoint> sbm_grid() {
  std::vector<GridPoint> grid;
  int id = 4;
  for (double p_intra : {0.9, 0.85, 0.8}) {
    for (double p_inter : {0.05, 0.075, 0.1}) {
      grid.push_back({"G" + std::to_string(id++), p_intra, p_inter});
    }
  }
  return grid;
}

void to_json(nlohmann::json& j, const BlockSpec& spec) {
  j = nlohmann::json{{"sizes", spec.sizes},
                     {"p_intra", spec.p_intra},
                     {"p_inter", spec.p_inter},
                     {"seed", spec.seed}};
}

void write_generated(const GeneratedGraph& gen, const std::filesystem::path& prefix) {
  const auto base = prefix.string();
  write_edge_list(gen.graph, std::filesystem::path(base + ".edges"));
  write_labels(gen.truth.labels(), std::filesystem::path(base + ".labels"));
  nlohmann::json sidecar{{"model", gen.model},
                         {"spec", gen.spec},
                         {"rng", std::string(Rng::kAlgorithm)},
                         {"vertices", gen.graph.vertex_count()},
                         {"edges", gen.graph.edge_count()}};
  std::ofstream out(base + ".json");
  if (!out) throw IoError("cannot write " + base + ".json");
  out << sidecar.dump(2) << '\n';
}

}  // namespace bmclust
