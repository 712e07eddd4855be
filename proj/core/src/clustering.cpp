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

#include "bmclust/clustering.hpp"

#include <unordered_map>

#include "bmclust/error.hpp"

namespace bmclust {
namespace {

template <class Label>
void canonicalize(std::span<const Label> raw, std::vector<ClusterId>& labels,
                        std::size_t& count) {
  std::unordered_map<Label, ClusterId> remap;
  labels.resize(raw.size());
  for (std::size_t v = 0; v < raw.size(); ++v) {
    const auto [it, inserted] = remap.try_emplace(raw[v], static_cast<ClusterId>(remap.size()));
    labels[v] = it->second;
  }
  count = remap.size();
}

}  // namespace

Clustering Clustering::from_labels(std::span<const std::int64_t> raw) {
  Clustering c;
  canonicalize(raw, c.labels_, c.cluster_count_);
  return c;
}

Clustering Clustering::from_labels(std::span<const ClusterId> raw) {
  Clustering c;
  canonicalize(raw, c.labels_, c.cluster_count_);
  return c;
}

Clustering Clustering::single_cluster(std::size_t n) {
  Clustering c;
  c.labels_.assign(n, 0);
  c.cluster_count_ = n == 0 ? 0 : 1;
  return c;
}

Clustering Clustering::singletons(std::size_t n) {
  Clustering c;
  c.labels_.resize(n);
  for (std::size_t v = 0; v < n; ++v) c.labels_[v] = static_cast<ClusterId>(v);
  c.cluster_count_ = n;
  return c;
}

std::vector<std::size_t> Clustering::sizes() const {
  std::vector<std::size_t> out(cluster_count_, 0);
  for (ClusterId c : labels_) ++out[static_cast<std::size_t>(c)];
  return out;
}

std::vector<std::vector<VertexId>> Clustering::members() const {
  std::vector<std::vector<VertexId>> out(cluster_count_);
  for (std::size_t v = 0; v < labels_.size(); ++v) {
    out[static_cast<std::size_t>(labels_[v])].push_back(static_cast<VertexId>(v));
  }
  return out;
}

}  // namespace bmclust
