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

#ifndef BMCLUST_BENCH_HPP_
#define BMCLUST_BENCH_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "bmclust/anneal.hpp"
#include "bmclust/eval_truth.hpp"
#include "bmclust/quality.hpp"
#include "bmclust/runner.hpp"

namespace bmclust {

struct BenchRow;

struct BenchOptions {
  std::vector<std::uint64_t> seeds{1, 2, 3};
  // Per Boltzmann solve. Louvain ignores it.
  Budget budget{std::nullopt, 60.0, std::nullopt, 500};
  std::size_t replicas = 32;
  unsigned threads = 1;
  std::vector<Method> methods{Method::kLouvain, Method::kQpBm, Method::kKmedBm};

  // Football suite only.
  std::filesystem::path football_gml;
  std::size_t football_runs = 10;
  std::size_t football_k = 12;

  // Called after every completed solve.
  std::function<void(const BenchRow&)> progress;

};

struct BenchRow {
  std::string graph;  // G1.. for grids, "football" otherwise
  std::uint64_t seed = 0;
  double p_intra = 0.0;
  double p_inter = 0.0;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t truth_clusters = 0;
  double truth_modularity = 0.0;
  Method method = Method::kLouvain;
  std::size_t k = 0;  // 0 for Louvain
  QualityReport quality;
  std::optional<double> energy;
  MatchReport match;
  double time_to_best_s = 0.0;
  double solve_s = 0.0;
  double distance_s = 0.0;
  std::string stop_reason;
};

struct BenchReport {
  std::string suite;
  std::vector<std::uint64_t> seeds;
  std::vector<BenchRow> rows;
};

// Planted-partition grid G1..G3: 5 blocks of 50 vertices, K = 5.
BenchReport bench_ppm(const BenchOptions& options);
// Desk-scale SBM grid G4..G12: 10 blocks, K = 10.
BenchReport bench_sbm_desk(const BenchOptions& options);
// `football_runs` seeded runs per method on the user-supplied GML file.
BenchReport bench_football(const BenchOptions& options);

// Mean K_intra over seeds, per (graph, method).
struct IntraSummary {
  std::string graph;
  Method method;
  double mean_intra;
};
std::vector<IntraSummary> mean_intra_by_graph(const BenchReport& report);

// Number of graphs on which each method attains the highest mean K_intra.
// Ties credit every tied method.
struct BestCount {
  Method method;
  std::size_t wins;
};
std::vector<BestCount> best_intra_counts(const BenchReport& report);

// Best run per method: lowest energy for the Boltzmann methods, highest
// modularity for Louvain. Rows of one method only.
const BenchRow& best_run(const BenchReport& report, Method method);

void to_json(nlohmann::json& j, const BenchRow& row);
void to_json(nlohmann::json& j, const BenchReport& report);
std::string render_markdown(const BenchReport& report);

}  // namespace bmclust

#endif  // BMCLUST_BENCH_HPP_
