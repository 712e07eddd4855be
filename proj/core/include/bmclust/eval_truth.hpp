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

#ifndef BMCLUST_EVAL_TRUTH_HPP_
#define BMCLUST_EVAL_TRUTH_HPP_

#include <cstddef>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "bmclust/clustering.hpp"

namespace bmclust {

struct ClusterMatch {
  ClusterId found = 0;
  ClusterId truth = 0;     // best-matching ground-truth cluster (lowest id on ties)
  double jaccard = 0.0;    // max over truth clusters of |T ∩ F| / |T ∪ F|
};

// Per found cluster, the maximum Jaccard set similarity against every
// ground-truth cluster. Matches are independent, not a bijection: several
// found clusters may pick the same truth cluster (`truth_claimed` counts the
// distinct ones). The mean is unweighted over found clusters.
struct MatchReport {
  std::vector<ClusterMatch> per_cluster_best;
  double mean_jtilde = 0.0;
  std::size_t exact_matches = 0;
  std::size_t truth_claimed = 0;
  std::size_t found_clusters = 0;
  std::size_t truth_clusters = 0;
};

// Throws InvalidArgument when the clusterings cover different vertex counts.
MatchReport match_clusters(const Clustering& truth, const Clustering& found);

void to_json(nlohmann::json& j, const MatchReport& report);

}  // namespace bmclust

#endif  // BMCLUST_EVAL_TRUTH_HPP_
