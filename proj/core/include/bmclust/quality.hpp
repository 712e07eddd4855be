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

#ifndef BMCLUST_QUALITY_HPP_
#define BMCLUST_QUALITY_HPP_

#include <cstddef>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "bmclust/clustering.hpp"
#include "bmclust/graph.hpp"

namespace bmclust {

// Density-based quality of a clustering.
//
// A singleton cluster has intra-density 1 (vacuously complete); the number of
// singletons is reported so the mean can be read with that in mind. With a
// single cluster the mean inter-density is 0 and `degenerate` is set.
struct QualityReport {
  double density = 0.0;
  double mean_intra = 0.0;
  double mean_inter = 0.0;
  std::vector<double> per_cluster_intra;
  bool inequality_lower = false;  // mean_inter < density
  bool inequality_upper = false;  // density < mean_intra
  double modularity = 0.0;
  std::size_t clusters = 0;
  std::size_t singletons = 0;
  bool degenerate = false;

  bool inequality_holds() const noexcept { return inequality_lower && inequality_upper; }
};

// |e_ii| / (0.5 n_i (n_i - 1)); 1.0 for a singleton.
double intra_density(const Graph& g, const Clustering& cl, ClusterId i);

// |e_ij| / (n_i n_j). Throws InvalidArgument when i == j.
double inter_density(const Graph& g, const Clustering& cl, ClusterId i, ClusterId j);

// Newman-Girvan modularity; uses edge weights when the graph has them.
// Throws InvalidArgument on an edgeless graph.
double modularity(const Graph& g, const Clustering& cl);

QualityReport quality_report(const Graph& g, const Clustering& cl);

void to_json(nlohmann::json& j, const QualityReport& report);

}  // namespace bmclust

#endif  // BMCLUST_QUALITY_HPP_
