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

#include "bmclust/distance.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <thread>

#include "bmclust/error.hpp"

namespace bmclust {
namespace {

std::size_t intersection_size(std::span<const VertexId> a, std::span<const VertexId> b) {
  std::size_t count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

double distance_from_sets(std::span<const VertexId> a, std::span<const VertexId> b) {
  const std::size_t common = intersection_size(a, b);
  const std::size_t uni = a.size() + b.size() - common;
  if (uni == 0) return 1.0;
  return 1.0 - static_cast<double>(common) / static_cast<double>(uni);
}

std::uint64_t to_little_endian(std::uint64_t x) {
  if constexpr (std::endian::native == std::endian::little) {
    return x;
  } else {
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r |= ((x >> (8 * i)) & 0xffULL) << (8 * (7 - i));
    return r;
  }
}

}  // namespace

double jaccard_distance(const Graph& g, VertexId i, VertexId j) {
  if (i == j) return 0.0;
  return distance_from_sets(g.neighbors(i), g.neighbors(j));
}

DistanceMatrix jaccard_matrix(const Graph& g, unsigned threads) {
  const std::size_t n = g.vertex_count();
  DistanceMatrix dm(n);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));

  // Row i fills (i, j) and (j, i) for j > i; rows are dealt round-robin so
  // the triangular workload stays balanced.
  auto work = [&](unsigned worker) {
    for (std::size_t i = worker; i < n; i += threads) {
      const auto ni = g.neighbors(static_cast<VertexId>(i));
      for (std::size_t j = i + 1; j < n; ++j) {
        dm.set(i, j, distance_from_sets(ni, g.neighbors(static_cast<VertexId>(j))));
      }
    }
  };
  if (threads <= 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads - 1);
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work, t);
    work(0);
  }
  return dm;
}

void save_distance_matrix(const DistanceMatrix& dm, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  auto put = [&out](std::uint64_t word) {
    word = to_little_endian(word);
    out.write(reinterpret_cast<const char*>(&word), sizeof(word));
  };
  put(static_cast<std::uint64_t>(dm.size()));
  for (double d : dm.values()) put(std::bit_cast<std::uint64_t>(d));
  if (!out) throw IoError("failed writing " + path.string());
}

DistanceMatrix load_distance_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  auto get = [&in, &path]() {
    std::uint64_t word = 0;
    if (!in.read(reinterpret_cast<char*>(&word), sizeof(word))) {
      throw IoError(path.string() + ": truncated distance matrix");
    }
    return to_little_endian(word);
  };
  const std::uint64_t n = get();
  if (n > (1ULL << 20)) throw IoError(path.string() + ": implausible dimension " + std::to_string(n));
  DistanceMatrix dm(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double d = std::bit_cast<double>(get());
      if (j > i) {
        dm.set(i, j, d);
      } else if (j < i && dm(i, j) != d) {
        throw IoError(path.string() + ": matrix is not symmetric");
      } else if (j == i && d != 0.0) {
        throw IoError(path.string() + ": non-zero diagonal");
      }
    }
  }
  return dm;
}

}  // namespace bmclust
