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

#include <benchmark/benchmark.h>

#include "bmclust/anneal.hpp"
#include "bmclust/distance.hpp"
#include "bmclust/generators.hpp"
#include "bmclust/louvain.hpp"
#include "bmclust/model_kmed.hpp"
#include "bmclust/model_qp.hpp"

namespace {

using namespace bmclust;

const GeneratedGraph& desk_graph() {
  static const GeneratedGraph gen = generate_sbm(desk_sbm_spec(0.85, 0.075, 1));
  return gen;
}

const DistanceMatrix& desk_distances() {
  static const DistanceMatrix dm = jaccard_matrix(desk_graph().graph, 1);
  return dm;
}

void BM_GeneratePpm(benchmark::State& state) {
  const auto size = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(generate_ppm(5, size, 0.9, 0.1, seed++));
}
BENCHMARK(BM_GeneratePpm)->Arg(50)->Arg(200);

void BM_JaccardMatrix(benchmark::State& state) {
  const GeneratedGraph gen = generate_ppm(5, static_cast<std::size_t>(state.range(0)), 0.8, 0.2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(jaccard_matrix(gen.graph, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0) * 25);
}
BENCHMARK(BM_JaccardMatrix)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_JaccardMatrixDesk(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(jaccard_matrix(desk_graph().graph, 1));
}
BENCHMARK(BM_JaccardMatrixDesk)->Unit(benchmark::kMillisecond);

template <class M>
void run_sweeps(benchmark::State& state, const M& model, double temperature) {
  Replica<M> replica(model, 7);
  for (auto _ : state) metropolis_sweep(model, replica, temperature, model.dimension());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(model.dimension()));
  state.counters["acceptance"] =
      static_cast<double>(replica.accepted) / static_cast<double>(std::max<std::size_t>(1, replica.proposed));
}

void BM_QpSweepDesk(benchmark::State& state) {
  const QpModel model(desk_distances(), kDeskBlocks);
  run_sweeps(state, model, static_cast<double>(state.range(0)) / 100.0);
}
BENCHMARK(BM_QpSweepDesk)->Arg(5)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_KmedSweepDesk(benchmark::State& state) {
  const KmedModel model(desk_distances(), kDeskBlocks, default_tradeoffs(desk_graph().graph.vertex_count(), kDeskBlocks));
  run_sweeps(state, model, static_cast<double>(state.range(0)) / 1000.0);
}
BENCHMARK(BM_KmedSweepDesk)->Arg(5)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_TemperingBarriersG1(benchmark::State& state) {
  const GeneratedGraph gen = generate_ppm(5, 50, 0.9, 0.1, 1);
  const DistanceMatrix dm = jaccard_matrix(gen.graph, 1);
  const QpModel model(dm, 5);
  AnnealConfig config;
  config.budget.max_barriers = 50;
  config.budget.stall_barriers = 0;
  config.record_trace = false;
  for (auto _ : state) benchmark::DoNotOptimize(anneal(model, config).best_energy);
}
BENCHMARK(BM_TemperingBarriersG1)->Unit(benchmark::kMillisecond);

void BM_LouvainDesk(benchmark::State& state) {
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(louvain_cluster(desk_graph().graph, seed++));
}
BENCHMARK(BM_LouvainDesk)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
