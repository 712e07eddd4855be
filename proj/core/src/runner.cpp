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

#include "bmclust/runner.hpp"

#include <chrono>
#include <cstdlib>

#include <nlohmann/json.hpp>

#include "bmclust/error.hpp"
#include "bmclust/louvain.hpp"
#include "bmclust/model_qp.hpp"

namespace bmclust {
namespace {

double seconds_between(std::chrono::steady_clock::time_point a, std::chrono::steady_clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

template <class T>
void put_optional(nlohmann::json& j, const char* key, const std::optional<T>& value) {
  if (value) {
    j[key] = *value;
  } else {
    j[key] = nullptr;
  }
}

template <class T>
void get_optional(const nlohmann::json& j, const char* key, std::optional<T>& value) {
  if (auto it = j.find(key); it != j.end() && !it->is_null()) {
    value = it->get<T>();
  } else {
    value.reset();
  }
}

template <class T>
void get_if_present(const nlohmann::json& j, const char* key, T& value) {
  if (auto it = j.find(key); it != j.end() && !it->is_null()) value = it->get<T>();
}

}  // namespace

std::string_view method_name(Method m) {
  switch (m) {
    case Method::kQpBm:
      return "qp-bm";
    case Method::kKmedBm:
      return "kmed-bm";
    case Method::kLouvain:
      return "louvain";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  if (name == "qp-bm") return Method::kQpBm;
  if (name == "kmed-bm") return Method::kKmedBm;
  if (name == "louvain") return Method::kLouvain;
  throw InvalidArgument("unknown method '" + std::string(name) + "' (expected qp-bm, kmed-bm or louvain)");
}

void RunConfig::validate() const {
  if (method == Method::kLouvain) {
    if (k) throw InvalidArgument("--k is not accepted by louvain (it picks the cluster count itself)");
    return;
  }
  if (!k) throw InvalidArgument(std::string(method_name(method)) + " requires --k");
  if (*k == 0) throw InvalidArgument("--k must be >= 1");
  if (replicas == 0) throw InvalidArgument("replica count must be >= 1");
  if (instances == 0) throw InvalidArgument("instance count must be >= 1");
  if ((alpha || beta) && method != Method::kKmedBm) {
    throw InvalidArgument("--alpha/--beta only apply to kmed-bm");
  }
  budget.validate();
}

AnnealConfig RunConfig::anneal_config() const {
  AnnealConfig c;
  c.replicas = temperatures.empty() ? replicas : temperatures.size();
  c.sweeps_per_barrier = sweeps_per_barrier;
  c.temperatures = temperatures;
  c.t_min = t_min;
  c.t_max = t_max;
  c.budget = budget;
  c.seed = seed;
  c.threads = threads;
  c.instances = instances;
  c.scan = scan;
  c.record_trace = !trace_out.empty();
  return c;
}

void to_json(nlohmann::json& j, const RunConfig& c) {
  j = nlohmann::json::object();
  j["method"] = method_name(c.method);
  put_optional(j, "k", c.k);
  j["seed"] = c.seed;
  nlohmann::json budget = nlohmann::json::object();
  put_optional(budget, "max_barriers", c.budget.max_barriers);
  put_optional(budget, "wall_seconds", c.budget.wall_seconds);
  put_optional(budget, "target_energy", c.budget.target_energy);
  budget["stall_barriers"] = c.budget.stall_barriers;
  j["budget"] = budget;
  j["replicas"] = c.replicas;
  j["instances"] = c.instances;
  j["sweeps_per_barrier"] = c.sweeps_per_barrier;
  put_optional(j, "t_min", c.t_min);
  put_optional(j, "t_max", c.t_max);
  j["temperatures"] = c.temperatures;
  put_optional(j, "alpha", c.alpha);
  put_optional(j, "beta", c.beta);
  j["scan"] = c.scan == ScanOrder::kSequential ? "sequential" : "random";
  j["threads"] = c.threads;
  j["input"] = c.input;
  j["input_format"] = c.input_format;
  j["truth"] = c.truth;
  j["output"] = c.output;
  j["labels_out"] = c.labels_out;
  j["trace_out"] = c.trace_out;
}

void from_json(const nlohmann::json& j, RunConfig& c) {
  c = RunConfig{};
  c.method = parse_method(j.at("method").get<std::string>());
  get_optional(j, "k", c.k);
  get_if_present(j, "seed", c.seed);
  if (auto it = j.find("budget"); it != j.end()) {
    get_optional(*it, "max_barriers", c.budget.max_barriers);
    get_optional(*it, "wall_seconds", c.budget.wall_seconds);
    get_optional(*it, "target_energy", c.budget.target_energy);
    get_if_present(*it, "stall_barriers", c.budget.stall_barriers);
  }
  get_if_present(j, "replicas", c.replicas);
  get_if_present(j, "instances", c.instances);
  get_if_present(j, "sweeps_per_barrier", c.sweeps_per_barrier);
  get_optional(j, "t_min", c.t_min);
  get_optional(j, "t_max", c.t_max);
  get_if_present(j, "temperatures", c.temperatures);
  get_optional(j, "alpha", c.alpha);
  get_optional(j, "beta", c.beta);
  std::string scan = "random";
  get_if_present(j, "scan", scan);
  if (scan != "random" && scan != "sequential") throw InvalidArgument("unknown scan order '" + scan + "'");
  c.scan = scan == "sequential" ? ScanOrder::kSequential : ScanOrder::kRandom;
  get_if_present(j, "threads", c.threads);
  get_if_present(j, "input", c.input);
  get_if_present(j, "input_format", c.input_format);
  get_if_present(j, "truth", c.truth);
  get_if_present(j, "output", c.output);
  get_if_present(j, "labels_out", c.labels_out);
  get_if_present(j, "trace_out", c.trace_out);
}

RunResult run_method(const Graph& g, const RunConfig& config, const DistanceMatrix* dm) {
  config.validate();
  using Clock = std::chrono::steady_clock;
  RunResult out;

  if (config.method == Method::kLouvain) {
    const auto start = Clock::now();
    LouvainOptions options;
    options.seed = config.seed;
    const LouvainResult lr = louvain(g, options);
    out.solve_s = seconds_between(start, Clock::now());
    out.time_to_best_s = out.solve_s;
    out.clustering = lr.clustering;
    out.quality = quality_report(g, out.clustering);
    out.stop_reason = "converged";
    return out;
  }

  DistanceMatrix owned;
  if (dm == nullptr) {
    const auto start = Clock::now();
    owned = jaccard_matrix(g, config.threads);
    out.distance_s = seconds_between(start, Clock::now());
    dm = &owned;
  }
  if (*config.k > g.vertex_count()) throw InvalidArgument("--k exceeds the vertex count");
  const AnnealConfig anneal_config = config.anneal_config();

  auto copy_anneal = [&out](const auto& ar) {
    out.time_to_best_s = ar.time_to_best_s;
    out.solve_s = ar.elapsed_s;
    out.barriers = ar.barriers;
    out.stop_reason = ar.stop_reason;
    out.temperatures = ar.temperatures;
    out.trace = ar.trace;
  };

  if (config.method == Method::kQpBm) {
    QpResult qr = qp_solve(g, *dm, *config.k, anneal_config);
    copy_anneal(qr.anneal);
    out.clustering = std::move(qr.clustering);
    out.quality = qr.quality;
    out.energy = qr.energy;
  } else {
    std::optional<Tradeoffs> tradeoffs;
    if (config.alpha || config.beta) {
      Tradeoffs t = default_tradeoffs(g.vertex_count(), *config.k);
      if (config.alpha) t.alpha = *config.alpha;
      if (config.beta) t.beta = *config.beta;
      tradeoffs = t;
    }
    KmedResult kr = kmed_solve(g, *dm, *config.k, anneal_config, tradeoffs);
    copy_anneal(kr.anneal);
    out.clustering = std::move(kr.clustering);
    out.quality = kr.quality;
    out.energy = kr.energy;
    out.medoids = kr.medoids;
    out.tradeoffs = kr.tradeoffs;
  }
  return out;
}

nlohmann::json result_json(const RunConfig& config, const RunResult& r) {
  nlohmann::json j;
  j["config"] = config;
  j["method"] = method_name(config.method);
  j["vertices"] = r.clustering.vertex_count();
  j["labels"] = std::vector<ClusterId>(r.clustering.labels().begin(), r.clustering.labels().end());
  j["quality"] = r.quality;
  put_optional(j, "energy", r.energy);
  if (config.method == Method::kKmedBm) {
    j["medoids"] = r.medoids;
    if (r.tradeoffs) j["tradeoffs"] = {{"alpha", r.tradeoffs->alpha}, {"beta", r.tradeoffs->beta}};
  }
  if (r.match) j["match"] = *r.match;
  j["time_to_best_s"] = r.time_to_best_s;
  j["solve_s"] = r.solve_s;
  j["distance_s"] = r.distance_s;
  if (config.method != Method::kLouvain) {
    j["barriers"] = r.barriers;
    j["temperatures"] = r.temperatures;
  }
  j["stop_reason"] = r.stop_reason;
  j["trace"] = config.trace_out.empty() ? nlohmann::json(nullptr) : nlohmann::json(config.trace_out);
  return j;
}

unsigned default_thread_count(unsigned fallback) {
  if (const char* env = std::getenv("BMCLUST_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long value = std::strtoul(env, &end, 10);
    if (end != nullptr && *end == '\0' && value > 0 && value < 4096) return static_cast<unsigned>(value);
  }
  return fallback;
}

}  // namespace bmclust
