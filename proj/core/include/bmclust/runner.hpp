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

#ifndef BMCLUST_RUNNER_HPP_
#define BMCLUST_RUNNER_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "bmclust/anneal.hpp"
#include "bmclust/clustering.hpp"
#include "bmclust/distance.hpp"
#include "bmclust/eval_truth.hpp"
#include "bmclust/graph.hpp"
#include "bmclust/model_kmed.hpp"
#include "bmclust/quality.hpp"

namespace bmclust {

enum class Method { kQpBm, kKmedBm, kLouvain };

std::string_view method_name(Method m);
// Accepts "qp-bm", "kmed-bm" and "louvain"; throws InvalidArgument otherwise.
Method parse_method(std::string_view name);

// Everything needed to reproduce a clustering run. Serialized verbatim into
// the result JSON so a run can be replayed from its output.
struct RunConfig {
  Method method = Method::kLouvain;
  std::optional<std::size_t> k;
  std::uint64_t seed = 1;
  Budget budget;
  std::size_t replicas = 32;
  std::size_t instances = 1;
  std::size_t sweeps_per_barrier = 1;
  std::optional<double> t_min;
  std::optional<double> t_max;
  std::vector<double> temperatures;
  std::optional<double> alpha;
  std::optional<double> beta;
  ScanOrder scan = ScanOrder::kRandom;
  unsigned threads = 1;

  std::string input;
  std::string input_format = "edges";  // "edges" or "gml"
  std::string truth;                   // optional labels file to match against
  std::string output;
  std::string labels_out;
  std::string trace_out;

  // K is required for the Boltzmann methods and forbidden for Louvain.
  // Throws InvalidArgument before any computation starts.
  void validate() const;
  AnnealConfig anneal_config() const;
};

void to_json(nlohmann::json& j, const RunConfig& config);
void from_json(const nlohmann::json& j, RunConfig& config);

struct RunResult {
  Clustering clustering;
  QualityReport quality;
  std::optional<double> energy;
  std::vector<VertexId> medoids;
  std::optional<Tradeoffs> tradeoffs;
  std::optional<MatchReport> match;
  double time_to_best_s = 0.0;
  double solve_s = 0.0;
  double distance_s = 0.0;
  std::size_t barriers = 0;
  std::string stop_reason;
  std::vector<double> temperatures;
  std::vector<TraceEntry> trace;
};

// Runs one method on `g`. When `dm` is null and the method needs distances
// the Jaccard matrix is built here (its time is reported in distance_s and
// excluded from the solver times).
RunResult run_method(const Graph& g, const RunConfig& config, const DistanceMatrix* dm = nullptr);

nlohmann::json result_json(const RunConfig& config, const RunResult& result);

// Reads a thread count from BMCLUST_THREADS, falling back to `fallback`.
unsigned default_thread_count(unsigned fallback = 1);

}  // namespace bmclust

#endif  // BMCLUST_RUNNER_HPP_
