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

#include "bmclust/anneal.hpp"

#include <ostream>

#include <nlohmann/json.hpp>

#include "bmclust/error.hpp"

namespace bmclust {

double exchange_acceptance(double t_lo, double t_hi, double e_lo, double e_hi) {
  if (!(t_lo > 0.0) || !(t_hi > 0.0)) {
    throw InvalidArgument("exchange acceptance needs positive temperatures");
  }
  if (!(t_lo < t_hi)) throw InvalidArgument("exchange acceptance needs t_lo < t_hi");
  const double exponent = (1.0 / t_lo - 1.0 / t_hi) * (e_lo - e_hi);
  if (exponent >= 0.0) return 1.0;
  return std::exp(exponent);
}

TemperatureLadder::TemperatureLadder(std::vector<double> temps) : temps_(std::move(temps)) {
  if (temps_.empty()) throw InvalidArgument("temperature ladder is empty");
  for (std::size_t i = 0; i < temps_.size(); ++i) {
    if (!(temps_[i] > 0.0) || !std::isfinite(temps_[i])) {
      throw InvalidArgument("temperatures must be positive and finite");
    }
    if (i > 0 && !(temps_[i - 1] < temps_[i])) {
      throw InvalidArgument("temperatures must be strictly ascending");
    }
  }
}

TemperatureLadder TemperatureLadder::geometric(double t_min, double t_max, std::size_t count) {
  if (count == 0) throw InvalidArgument("temperature ladder is empty");
  if (!(t_min > 0.0) || !(t_max > 0.0)) throw InvalidArgument("temperatures must be positive");
  if (count == 1) return TemperatureLadder({t_min});
  if (!(t_min < t_max)) throw InvalidArgument("ladder needs t_min < t_max");
  std::vector<double> temps(count);
  const double ratio = std::log(t_max / t_min) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) temps[i] = t_min * std::exp(ratio * static_cast<double>(i));
  temps.front() = t_min;
  temps.back() = t_max;
  return TemperatureLadder(std::move(temps));
}

void Budget::validate() const {
  if (!max_barriers && !wall_seconds && !target_energy) {
    throw InvalidArgument("budget needs a barrier limit, a wall-clock limit or a target energy");
  }
  if (max_barriers && *max_barriers == 0) throw InvalidArgument("zero barrier budget");
  if (wall_seconds && !(*wall_seconds > 0.0)) throw InvalidArgument("zero wall-clock budget");
}

namespace detail {

void validate_run(std::size_t ladder_size, const AnnealConfig& config) {
  if (ladder_size == 0) throw InvalidArgument("temperature ladder is empty");
  if (config.sweeps_per_barrier == 0) throw InvalidArgument("sweeps_per_barrier must be >= 1");
  config.budget.validate();
}

bool improves(double candidate, double incumbent) {
  return candidate < incumbent - 1e-10 * std::max(1.0, std::abs(incumbent));
}

}  // namespace detail

void to_json(nlohmann::json& j, const TraceEntry& entry) {
  j = nlohmann::json{{"barrier", entry.barrier},
                     {"wall_ms", entry.wall_ms},
                     {"best_energy", entry.best_energy},
                     {"acceptance", entry.acceptance}};
}

void write_trace_jsonl(std::span<const TraceEntry> trace, std::ostream& out) {
  for (const TraceEntry& entry : trace) out << nlohmann::json(entry).dump() << '\n';
}

}  // namespace bmclust
