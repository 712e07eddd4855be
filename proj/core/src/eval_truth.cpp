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

#include "bmclust/eval_truth.hpp"

#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "bmclust/error.hpp"

namespace bmclust {

MatchReport match_clusters(const Clustering& truth, const Clustering& found) {
  if (truth.vertex_count() != found.vertex_count()) {
    throw InvalidArgument("clusterings cover different vertex counts (" +
                          std::to_string(truth.vertex_count()) + " vs " +
                          std::to_string(found.vertex_count()) + ")");
  }
  const std::size_t t_count = truth.cluster_count();
  const std::size_t f_count = found.cluster_count();
  // Contingency table; intersections of every (found, truth) pair.
  std::vector<std::size_t> overlap(f_count * t_count, 0);
  for (std::size_t v = 0; v < truth.vertex_count(); ++v) {
    ++overlap[static_cast<std::size_t>(found[v]) * t_count + static_cast<std::size_t>(truth[v])];
  }
  const auto t_sizes = truth.sizes();
  const auto f_sizes = found.sizes();

  MatchReport report;
  report.found_clusters = f_count;
  report.truth_clusters = t_count;
  std::set<ClusterId> claimed;
  double sum = 0.0;
  for (std::size_t f = 0; f < f_count; ++f) {
    ClusterMatch best{static_cast<ClusterId>(f), 0, -1.0};
    for (std::size_t t = 0; t < t_count; ++t) {
      const std::size_t inter = overlap[f * t_count + t];
      const std::size_t uni = f_sizes[f] + t_sizes[t] - inter;
      const double j = static_cast<double>(inter) / static_cast<double>(uni);
      if (j > best.jaccard) {
        best.jaccard = j;
        best.truth = static_cast<ClusterId>(t);
      }
    }
    if (overlap[f * t_count + static_cast<std::size_t>(best.truth)] == f_sizes[f] &&
        f_sizes[f] == t_sizes[static_cast<std::size_t>(best.truth)]) {
      ++report.exact_matches;
    }
    claimed.insert(best.truth);
    sum += best.jaccard;
    report.per_cluster_best.push_back(best);
  }
  report.truth_claimed = claimed.size();
  report.mean_jtilde = f_count == 0 ? 0.0 : sum / static_cast<double>(f_count);
  return report;
}

void to_json(nlohmann::json& j, const MatchReport& r) {
  nlohmann::json per = nlohmann::json::array();
  for (const ClusterMatch& m : r.per_cluster_best) {
    per.push_back({{"found", m.found}, {"truth", m.truth}, {"jtilde", m.jaccard}});
  }
  j = nlohmann::json{{"mean_jtilde", r.mean_jtilde},
                     {"exact_matches", r.exact_matches},
                     {"truth_claimed", r.truth_claimed},
                     {"found_clusters", r.found_clusters},
                     {"truth_clusters", r.truth_clusters},
                     {"per_cluster_best", per}};
}

}  // namespace bmclust
