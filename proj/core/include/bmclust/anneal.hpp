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

#ifndef BMCLUST_ANNEAL_HPP_
#define BMCLUST_ANNEAL_HPP_

#include <algorithm>
#include <atomic>
#include <barrier>
#include <chrono>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "bmclust/rng.hpp"

namespace bmclust {

// Contract between the tempering engine and a Boltzmann encoding.
//
// State is the mutable per-replica configuration (with whatever caches the
// model needs), Move a proposed elementary change and Solution a compact copy
// of a state used for incumbents. delta(s, m) must equal
// energy(apply(s, m)) - energy(s) to within 1e-9.
template <class M>
concept EnergyModel = requires(const M& model, typename M::State& state,
                               const typename M::State& cstate, const typename M::Move& move,
                               const typename M::Solution& solution, Rng& rng, std::size_t unit) {
  { model.dimension() } -> std::convertible_to<std::size_t>;
  { model.has_moves() } -> std::convertible_to<bool>;
  { model.random_state(rng) } -> std::same_as<typename M::State>;
  { model.propose(cstate, rng) } -> std::same_as<typename M::Move>;
  { model.propose_at(cstate, rng, unit) } -> std::same_as<typename M::Move>;
  { model.delta(cstate, move) } -> std::convertible_to<double>;
  model.apply(state, move);
  { model.energy(cstate) } -> std::convertible_to<double>;
  { model.snapshot(cstate) } -> std::same_as<typename M::Solution>;
  { model.solution_energy(solution) } -> std::convertible_to<double>;
};

// Models may rebuild drifting caches when the engine resynchronizes.
template <class M>
concept RefreshableModel = EnergyModel<M> && requires(const M& model, typename M::State& state) {
  model.refresh(state);
};

// min{1, exp((1/t_lo - 1/t_hi) (e_lo - e_hi))} for neighbouring rungs
// t_lo < t_hi holding energies e_lo and e_hi.
double exchange_acceptance(double t_lo, double t_hi, double e_lo, double e_hi);

class TemperatureLadder {
 public:
  // Throws InvalidArgument unless temps is non-empty, positive and strictly
  // ascending.
  explicit TemperatureLadder(std::vector<double> temps);

  // `count` temperatures spaced geometrically from t_min to t_max.
  static TemperatureLadder geometric(double t_min, double t_max, std::size_t count);

  std::size_t size() const noexcept { return temps_.size(); }
  double operator[](std::size_t rung) const noexcept { return temps_[rung]; }
  std::span<const double> temps() const noexcept { return temps_; }

 private:
  std::vector<double> temps_;
};

struct Budget {
  std::optional<std::size_t> max_barriers;
  std::optional<double> wall_seconds;
  std::optional<double> target_energy;
  // Stop after this many barriers without incumbent improvement; 0 disables.
  std::size_t stall_barriers = 500;

  // Throws InvalidArgument when no hard limit (barriers, wall clock, target)
  // is set, or when a limit is zero.
  void validate() const;
};

enum class ScanOrder { kRandom, kSequential };

struct AnnealConfig {
  std::size_t replicas = 32;
  std::size_t sweeps_per_barrier = 1;
  // Explicit ladder; when empty the ladder is calibrated from the model.
  std::vector<double> temperatures;
  std::optional<double> t_min;
  std::optional<double> t_max;
  double t_min_factor = 0.05;
  double t_max_factor = 2.0;
  std::size_t calibration_moves = 1000;
  Budget budget;
  std::uint64_t seed = 1;
  unsigned threads = 1;  // 0 = hardware concurrency
  std::size_t instances = 1;
  ScanOrder scan = ScanOrder::kRandom;
  // Recompute replica energies (and model caches) every this many barriers.
  std::size_t resync_interval = 64;
  bool record_trace = true;
};

struct TraceEntry {
  std::size_t barrier = 0;
  double wall_ms = 0.0;
  double best_energy = 0.0;
  std::vector<double> acceptance;          // per rung, this barrier
  std::vector<std::uint32_t> rung_replica;  // replica holding each rung after exchange
};

template <class Solution>
struct AnnealResult {
  Solution best{};
  double best_energy = 0.0;
  double time_to_best_s = 0.0;
  double elapsed_s = 0.0;
  std::size_t barriers = 0;
  std::vector<double> temperatures;
  std::vector<double> exchange_rates;  // per adjacent rung pair
  std::vector<TraceEntry> trace;
  std::string stop_reason;
  std::size_t instance = 0;
};

void to_json(nlohmann::json& j, const TraceEntry& entry);
void write_trace_jsonl(std::span<const TraceEntry> trace, std::ostream& out);

template <EnergyModel M>
struct Replica {
  Rng rng;
  typename M::State state;
  double energy;
  typename M::Solution best;
  double best_energy;
  // The current state is the best seen but has not been snapshotted yet.
  bool best_dirty = false;
  std::size_t proposed = 0;
  std::size_t accepted = 0;

  Replica(const M& model, std::uint64_t seed)
      : rng(seed),
        state(model.random_state(rng)),
        energy(model.energy(state)),
        best(model.snapshot(state)),
        best_energy(energy) {}

  void flush_best(const M& model) {
    if (best_dirty) {
      best = model.snapshot(state);
      best_dirty = false;
    }
  }
};

// Performs `moves` Metropolis proposals at temperature `temperature`.
// A proposal is accepted when delta <= 0, otherwise with probability
// exp(-delta / T); the acceptance draw is taken only for uphill moves.
// When `accept_log` is non-null the accept/reject outcome of every proposal
// is appended to it.
template <EnergyModel M>
void metropolis_sweep(const M& model, Replica<M>& r, double temperature, std::size_t moves,
                      ScanOrder scan = ScanOrder::kRandom, std::vector<bool>* accept_log = nullptr) {
  if (!model.has_moves()) return;
  const std::size_t dim = std::max<std::size_t>(1, model.dimension());
  for (std::size_t step = 0; step < moves; ++step) {
    const auto move = scan == ScanOrder::kSequential ? model.propose_at(r.state, r.rng, step % dim)
                                                     : model.propose(r.state, r.rng);
    const double delta = model.delta(r.state, move);
    const bool accept = delta <= 0.0 || r.rng.uniform01() < std::exp(-delta / temperature);
    ++r.proposed;
    if (accept_log != nullptr) accept_log->push_back(accept);
    if (!accept) continue;
    ++r.accepted;
    if (delta > 0.0) r.flush_best(model);
    model.apply(r.state, move);
    r.energy += delta;
    if (r.energy < r.best_energy) {
      r.best_energy = r.energy;
      r.best_dirty = true;
    }
  }
  r.flush_best(model);
}

// Sample standard deviation of delta over random moves from one random
// state; 1 when the sample is degenerate.
template <EnergyModel M>
double calibrate_delta_sigma(const M& model, std::uint64_t seed, std::size_t moves) {
  if (!model.has_moves() || moves < 2) return 1.0;
  Rng rng(seed);
  const auto state = model.random_state(rng);
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t k = 0; k < moves; ++k) {
    const double d = model.delta(state, model.propose(state, rng));
    const double step = d - mean;
    mean += step / static_cast<double>(k + 1);
    m2 += step * (d - mean);
  }
  const double sigma = std::sqrt(m2 / static_cast<double>(moves - 1));
  return sigma > 1e-12 && std::isfinite(sigma) ? sigma : 1.0;
}

template <EnergyModel M>
TemperatureLadder make_ladder(const M& model, const AnnealConfig& config) {
  if (!config.temperatures.empty()) return TemperatureLadder(config.temperatures);
  if (config.replicas == 0) return TemperatureLadder({});
  double t_min = config.t_min.value_or(0.0);
  double t_max = config.t_max.value_or(0.0);
  if (!config.t_min || !config.t_max) {
    const double sigma =
        calibrate_delta_sigma(model, derive_seed(config.seed, 0xca11b8a7eULL), config.calibration_moves);
    if (!config.t_min) t_min = config.t_min_factor * sigma;
    if (!config.t_max) t_max = config.t_max_factor * sigma;
  }
  return TemperatureLadder::geometric(t_min, t_max, config.replicas);
}

namespace detail {
void validate_run(std::size_t ladder_size, const AnnealConfig& config);
bool improves(double candidate, double incumbent);
}  // namespace detail

// Replica-exchange Metropolis search over a fixed temperature ladder.
//
// Each barrier runs sweeps_per_barrier sweeps (dimension() proposals each) on
// every replica, possibly on several worker threads, then attempts exchanges
// between neighbouring rungs (even pairs on even barriers, odd pairs on odd
// barriers) single-threaded. Exchanges swap rung temperatures between
// replicas, never states. With a barrier/target/stall budget the result is a
// function of (model, ladder, config) only, independent of thread count.
template <EnergyModel M>
AnnealResult<typename M::Solution> run_parallel_tempering(const M& model,
                                                          const TemperatureLadder& ladder,
                                                          const AnnealConfig& config) {
  detail::validate_run(ladder.size(), config);
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  auto seconds_since_start = [&t0]() {
    return std::chrono::duration<double>(Clock::now() - t0).count();
  };

  const std::size_t rungs = ladder.size();
  std::vector<Replica<M>> replicas;
  replicas.reserve(rungs);
  for (std::size_t r = 0; r < rungs; ++r) replicas.emplace_back(model, derive_seed(config.seed, r + 1));
  Rng exchange_rng(derive_seed(config.seed, 0));

  std::vector<std::uint32_t> rung_replica(rungs);
  std::vector<std::size_t> replica_rung(rungs);
  for (std::size_t i = 0; i < rungs; ++i) {
    rung_replica[i] = static_cast<std::uint32_t>(i);
    replica_rung[i] = i;
  }

  AnnealResult<typename M::Solution> result;
  result.temperatures.assign(ladder.temps().begin(), ladder.temps().end());
  result.exchange_rates.assign(rungs > 0 ? rungs - 1 : 0, 0.0);
  std::vector<std::size_t> exchange_attempts(result.exchange_rates.size(), 0);
  std::vector<std::size_t> exchange_accepts(result.exchange_rates.size(), 0);

  std::size_t best_replica = 0;
  for (std::size_t r = 1; r < rungs; ++r) {
    if (replicas[r].best_energy < replicas[best_replica].best_energy) best_replica = r;
  }
  result.best = replicas[best_replica].best;
  result.best_energy = replicas[best_replica].best_energy;

  const Budget& budget = config.budget;
  auto target_reached = [&]() {
    return budget.target_energy && result.best_energy <= *budget.target_energy;
  };

  if (!model.has_moves() || target_reached()) {
    result.stop_reason = model.has_moves() ? "target" : "no-moves";
    result.elapsed_s = seconds_since_start();
    result.best_energy = model.solution_energy(result.best);
    return result;
  }

  const std::size_t moves = config.sweeps_per_barrier * std::max<std::size_t>(1, model.dimension());
  std::vector<std::size_t> accepted_before(rungs, 0);
  auto sweep_replica = [&](std::size_t r) {
    Replica<M>& rep = replicas[r];
    accepted_before[r] = rep.accepted;
    metropolis_sweep(model, rep, ladder[replica_rung[r]], moves, config.scan);
  };

  unsigned threads = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                         : config.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, rungs));

  std::atomic<bool> done{false};
  std::barrier sync(static_cast<std::ptrdiff_t>(threads));
  std::vector<std::exception_ptr> errors(threads);
  auto worker_share = [&](unsigned w) {
    try {
      for (std::size_t r = w; r < rungs; r += threads) sweep_replica(r);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned w = 1; w < threads; ++w) {
    pool.emplace_back([&, w]() {
      for (;;) {
        sync.arrive_and_wait();
        if (done.load(std::memory_order_acquire)) return;
        worker_share(w);
        sync.arrive_and_wait();
      }
    });
  }
  auto stop_pool = [&]() {
    if (threads > 1 && !done.load(std::memory_order_acquire)) {
      done.store(true, std::memory_order_release);
      sync.arrive_and_wait();
      pool.clear();
    }
  };
  struct PoolGuard {
    decltype(stop_pool)& stop;
    ~PoolGuard() { stop(); }
  } guard{stop_pool};

  std::size_t stall = 0;
  std::size_t barrier = 0;
  for (;;) {
    if (threads > 1) sync.arrive_and_wait();
    worker_share(0);
    if (threads > 1) sync.arrive_and_wait();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    ++barrier;

    if (config.resync_interval > 0 && barrier % config.resync_interval == 0) {
      for (auto& rep : replicas) {
        if constexpr (RefreshableModel<M>) model.refresh(rep.state);
        rep.energy = model.energy(rep.state);
      }
    }

    TraceEntry entry;
    if (config.record_trace) {
      entry.acceptance.resize(rungs);
      for (std::size_t i = 0; i < rungs; ++i) {
        const std::size_t r = rung_replica[i];
        entry.acceptance[i] = static_cast<double>(replicas[r].accepted - accepted_before[r]) /
                              static_cast<double>(moves);
      }
    }

    for (std::size_t i = (barrier - 1) % 2; i + 1 < rungs; i += 2) {
      const std::size_t lo = rung_replica[i];
      const std::size_t hi = rung_replica[i + 1];
      const double p = exchange_acceptance(ladder[i], ladder[i + 1], replicas[lo].energy,
                                           replicas[hi].energy);
      ++exchange_attempts[i];
      if (exchange_rng.uniform01() < p) {
        ++exchange_accepts[i];
        std::swap(rung_replica[i], rung_replica[i + 1]);
        replica_rung[rung_replica[i]] = i;
        replica_rung[rung_replica[i + 1]] = i + 1;
      }
    }

    std::size_t leader = 0;
    for (std::size_t r = 1; r < rungs; ++r) {
      if (replicas[r].best_energy < replicas[leader].best_energy) leader = r;
    }
    if (detail::improves(replicas[leader].best_energy, result.best_energy)) {
      result.best = replicas[leader].best;
      result.best_energy = replicas[leader].best_energy;
      result.time_to_best_s = seconds_since_start();
      stall = 0;
    } else {
      ++stall;
    }

    const double now = seconds_since_start();
    if (config.record_trace) {
      entry.barrier = barrier;
      entry.wall_ms = now * 1000.0;
      entry.best_energy = result.best_energy;
      entry.rung_replica = rung_replica;
      result.trace.push_back(std::move(entry));
    }

    if (target_reached()) {
      result.stop_reason = "target";
    } else if (budget.max_barriers && barrier >= *budget.max_barriers) {
      result.stop_reason = "max-barriers";
    } else if (budget.stall_barriers > 0 && stall >= budget.stall_barriers) {
      result.stop_reason = "stall";
    } else if (budget.wall_seconds && now >= *budget.wall_seconds) {
      result.stop_reason = "wall-clock";
    }
    if (!result.stop_reason.empty()) break;
  }
  stop_pool();

  for (std::size_t i = 0; i < exchange_attempts.size(); ++i) {
    result.exchange_rates[i] = exchange_attempts[i] == 0
                                   ? 0.0
                                   : static_cast<double>(exchange_accepts[i]) /
                                         static_cast<double>(exchange_attempts[i]);
  }
  result.barriers = barrier;
  result.elapsed_s = seconds_since_start();
  result.best_energy = model.solution_energy(result.best);
  return result;
}

// Calibrates (or takes) the ladder and runs config.instances independent
// tempering instances, returning the best. Instances use seeds derived from
// config.seed; the wall-clock budget applies to each instance.
template <EnergyModel M>
AnnealResult<typename M::Solution> anneal(const M& model, const AnnealConfig& config) {
  const TemperatureLadder ladder = make_ladder(model, config);
  if (config.instances <= 1) return run_parallel_tempering(model, ladder, config);
  std::optional<AnnealResult<typename M::Solution>> best;
  for (std::size_t i = 0; i < config.instances; ++i) {
    AnnealConfig instance_config = config;
    instance_config.seed = derive_seed(config.seed, 0x1257a9cULL + i);
    auto result = run_parallel_tempering(model, ladder, instance_config);
    result.instance = i;
    if (!best || result.best_energy < best->best_energy) best = std::move(result);
  }
  return std::move(*best);
}

}  // namespace bmclust

#endif  // BMCLUST_ANNEAL_HPP_
