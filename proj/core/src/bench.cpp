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

#include "bmclust/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bmclust/distance.hpp"
#include "bmclust/error.hpp"
#include "bmclust/generators.hpp"
#include "bmclust/graph_io.hpp"

namespace bmclust {
namespace {

std::string fmt(const char* format, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, value);
  return buf;
}

RunConfig base_config(const BenchOptions& options, Method method, std::size_t k, std::uint64_t seed) {
  RunConfig c;
  c.method = method;
  if (method != Method::kLouvain) c.k = k;
  c.seed = seed;
  c.budget = options.budget;
  c.replicas = options.replicas;
  c.threads = options.threads;
  return c;
}

// Runs every configured method on one instance. The distance matrix is built
// once and shared; its time is attributed to every Boltzmann row.
void run_instance(const BenchOptions& options, const GeneratedGraph& gen, const std::string& graph_id,
                  std::size_t k, std::uint64_t seed, std::vector<BenchRow>& rows) {
  const bool needs_distance = std::any_of(options.methods.begin(), options.methods.end(),
                                          [](Method m) { return m != Method::kLouvain; });
  DistanceMatrix dm;
  double distance_s = 0.0;
  if (needs_distance) {
    const auto start = std::chrono::steady_clock::now();
    dm = jaccard_matrix(gen.graph, options.threads);
    distance_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  const double truth_q = modularity(gen.graph, gen.truth);
  for (Method method : options.methods) {
    const RunConfig config = base_config(options, method, k, seed);
    RunResult result = run_method(gen.graph, config, needs_distance ? &dm : nullptr);
    BenchRow row;
    row.graph = graph_id;
    row.seed = seed;
    row.p_intra = gen.spec.p_intra;
    row.p_inter = gen.spec.p_inter;
    row.vertices = gen.graph.vertex_count();
    row.edges = gen.graph.edge_count();
    row.truth_clusters = gen.truth.cluster_count();
    row.truth_modularity = truth_q;
    row.method = method;
    row.k = method == Method::kLouvain ? 0 : k;
    row.quality = result.quality;
    row.energy = result.energy;
    row.match = match_clusters(gen.truth, result.clustering);
    row.time_to_best_s = result.time_to_best_s;
    row.solve_s = result.solve_s;
    row.distance_s = method == Method::kLouvain ? 0.0 : distance_s;
    row.stop_reason = result.stop_reason;
    if (options.progress) options.progress(row);
    rows.push_back(std::move(row));
  }
}

std::vector<std::string> graph_order(const BenchReport& report) {
  std::vector<std::string> order;
  for (const BenchRow& r : report.rows) {
    if (std::find(order.begin(), order.end(), r.graph) == order.end()) order.push_back(r.graph);
  }
  return order;
}

std::vector<Method> method_order(const BenchReport& report) {
  std::vector<Method> order;
  for (const BenchRow& r : report.rows) {
    if (std::find(order.begin(), order.end(), r.method) == order.end()) order.push_back(r.method);
  }
  return order;
}

std::vector<const BenchRow*> select(const BenchReport& report, const std::string& graph, Method method) {
  std::vector<const BenchRow*> out;
  for (const BenchRow& r : report.rows) {
    if (r.graph == graph && r.method == method) out.push_back(&r);
  }
  return out;
}

template <class F>
double mean_of(const std::vector<const BenchRow*>& rows, F f) {
  double sum = 0.0;
  for (const BenchRow* r : rows) sum += f(*r);
  return rows.empty() ? 0.0 : sum / static_cast<double>(rows.size());
}

std::string verdict(const std::vector<const BenchRow*>& rows, bool (*holds)(const QualityReport&)) {
  std::size_t ok = 0;
  for (const BenchRow* r : rows) ok += holds(r->quality) ? 1 : 0;
  if (ok == rows.size()) return "Y";
  return "N (" + std::to_string(ok) + "/" + std::to_string(rows.size()) + ")";
}

std::string cluster_range(const std::vector<const BenchRow*>& rows) {
  std::size_t lo = SIZE_MAX;
  std::size_t hi = 0;
  for (const BenchRow* r : rows) {
    lo = std::min(lo, r->quality.clusters);
    hi = std::max(hi, r->quality.clusters);
  }
  if (rows.empty()) return "-";
  return lo == hi ? std::to_string(lo) : std::to_string(lo) + "-" + std::to_string(hi);
}

std::string method_title(Method m) {
  switch (m) {
    case Method::kQpBm:
      return "QP Boltzmann";
    case Method::kKmedBm:
      return "K-med Boltzmann";
    case Method::kLouvain:
      return "Louvain";
  }
  return "?";
}

void render_grid(const BenchReport& report, std::ostringstream& md) {
  const auto graphs = graph_order(report);
  for (Method method : method_order(report)) {
    md << "### " << method_title(method) << "\n\n|  |";
    for (const auto& g : graphs) md << ' ' << g << " |";
    md << "\n|---|";
    for (std::size_t i = 0; i < graphs.size(); ++i) md << "---|";
    md << '\n';
    auto line = [&](const std::string& label, auto cell) {
      md << "| " << label << " |";
      for (const auto& g : graphs) md << ' ' << cell(select(report, g, method)) << " |";
      md << '\n';
    };
    line("P_intra", [](const auto& rows) { return fmt("%.3g", rows.empty() ? 0.0 : rows[0]->p_intra); });
    line("P_inter", [](const auto& rows) { return fmt("%.3g", rows.empty() ? 0.0 : rows[0]->p_inter); });
    line("K", [](const auto& rows) { return fmt("%.3f", mean_of(rows, [](const BenchRow& r) { return r.quality.density; })); });
    line("mean K_inter", [](const auto& rows) {
      return fmt("%.3f", mean_of(rows, [](const BenchRow& r) { return r.quality.mean_inter; }));
    });
    line("mean K_intra", [](const auto& rows) {
      return fmt("%.3f", mean_of(rows, [](const BenchRow& r) { return r.quality.mean_intra; }));
    });
    line("Time to sol (s)", [](const auto& rows) {
      return fmt("%.2f", mean_of(rows, [](const BenchRow& r) { return r.time_to_best_s; }));
    });
    line("Distance build (s)", [](const auto& rows) {
      return fmt("%.2f", mean_of(rows, [](const BenchRow& r) { return r.distance_s; }));
    });
    line("K_inter < K", [](const auto& rows) {
      return verdict(rows, [](const QualityReport& q) { return q.inequality_lower; });
    });
    line("K < K_intra", [](const auto& rows) {
      return verdict(rows, [](const QualityReport& q) { return q.inequality_upper; });
    });
    line("Modularity", [](const auto& rows) {
      return fmt("%.3f", mean_of(rows, [](const BenchRow& r) { return r.quality.modularity; }));
    });
    line("Clusters identified", [](const auto& rows) { return cluster_range(rows); });
    md << '\n';
  }

  const auto methods = method_order(report);
  const auto summary = mean_intra_by_graph(report);
  md << "### Side by side mean K_intra\n\n| Graph |";
  for (Method m : methods) md << ' ' << method_title(m) << " |";
  md << "\n|---|";
  for (std::size_t i = 0; i < methods.size(); ++i) md << "---|";
  md << '\n';
  for (const auto& g : graphs) {
    double best = -1.0;
    for (const auto& s : summary) {
      if (s.graph == g) best = std::max(best, s.mean_intra);
    }
    md << "| " << g << " |";
    for (Method m : methods) {
      for (const auto& s : summary) {
        if (s.graph == g && s.method == m) {
          const std::string v = fmt("%.4f", s.mean_intra);
          md << ' ' << (s.mean_intra == best ? "**" + v + "**" : v) << " |";
        }
      }
    }
    md << '\n';
  }
  md << "| Count Best of " << methods.size() << " |";
  const auto counts = best_intra_counts(report);
  for (Method m : methods) {
    for (const auto& c : counts) {
      if (c.method == m) md << ' ' << c.wins << " |";
    }
  }
  md << "\n\n";
}

void render_football(const BenchReport& report, std::ostringstream& md) {
  md << "### Similarity to ground-truth clusters\n\n"
        "| Method | mean J (best run) | exact matches | truth claimed | clusters | modularity | "
        "time to sol (s) | best seed | max mean J over runs |\n"
        "|---|---|---|---|---|---|---|---|---|\n";
  for (Method m : method_order(report)) {
    const BenchRow& best = best_run(report, m);
    double max_j = 0.0;
    for (const BenchRow& r : report.rows) {
      if (r.method == m) max_j = std::max(max_j, r.match.mean_jtilde);
    }
    md << "| " << method_title(m) << " | " << fmt("%.3f", best.match.mean_jtilde) << " | "
       << best.match.exact_matches << " | " << best.match.truth_claimed << " | " << best.quality.clusters
       << " | " << fmt("%.3f", best.quality.modularity) << " | " << fmt("%.2f", best.time_to_best_s) << " | "
       << best.seed << " | " << fmt("%.3f", max_j) << " |\n";
  }
  md << '\n';
}

}  // namespace

BenchReport bench_ppm(const BenchOptions& options) {
  BenchReport report;
  report.suite = "ppm";
  report.seeds = options.seeds;
  for (const GridPoint& point : ppm_grid()) {
    for (std::uint64_t seed : options.seeds) {
      const GeneratedGraph gen = generate_ppm(5, 50, point.p_intra, point.p_inter, seed);
      run_instance(options, gen, point.id, 5, seed, report.rows);
    }
  }
  return report;
}

BenchReport bench_sbm_desk(const BenchOptions& options) {
  BenchReport report;
  report.suite = "sbm-desk";
  report.seeds = options.seeds;
  for (const GridPoint& point : sbm_grid()) {
    for (std::uint64_t seed : options.seeds) {
      const GeneratedGraph gen = generate_sbm(desk_sbm_spec(point.p_intra, point.p_inter, seed));
      run_instance(options, gen, point.id, kDeskBlocks, seed, report.rows);
    }
  }
  return report;
}

BenchReport bench_football(const BenchOptions& options) {
  if (options.football_gml.empty()) throw InvalidArgument("football suite needs the GML path");
  const GmlGraph gml = load_gml_subset(options.football_gml);
  if (!gml.labels) throw InvalidArgument("football GML carries no complete 'value' labels");
  GeneratedGraph gen;
  gen.graph = gml.graph;
  gen.truth = Clustering::from_labels(std::span<const std::int64_t>(*gml.labels));
  gen.model = "gml";
  BenchReport report;
  report.suite = "football";
  for (std::size_t run = 0; run < options.football_runs; ++run) {
    report.seeds.push_back(run + 1);
    run_instance(options, gen, "football", options.football_k, run + 1, report.rows);
  }
  return report;
}

std::vector<IntraSummary> mean_intra_by_graph(const BenchReport& report) {
  std::vector<IntraSummary> out;
  for (const auto& g : graph_order(report)) {
    for (Method m : method_order(report)) {
      const auto rows = select(report, g, m);
      out.push_back({g, m, mean_of(rows, [](const BenchRow& r) { return r.quality.mean_intra; })});
    }
  }
  return out;
}

std::vector<BestCount> best_intra_counts(const BenchReport& report) {
  const auto summary = mean_intra_by_graph(report);
  std::vector<BestCount> counts;
  for (Method m : method_order(report)) counts.push_back({m, 0});
  for (const auto& g : graph_order(report)) {
    double best = -1.0;
    for (const auto& s : summary) {
      if (s.graph == g) best = std::max(best, s.mean_intra);
    }
    for (const auto& s : summary) {
      if (s.graph != g || s.mean_intra != best) continue;
      for (auto& c : counts) {
        if (c.method == s.method) ++c.wins;
      }
    }
  }
  return counts;
}

const BenchRow& best_run(const BenchReport& report, Method method) {
  const BenchRow* best = nullptr;
  for (const BenchRow& r : report.rows) {
    if (r.method != method) continue;
    if (best == nullptr) {
      best = &r;
    } else if (method == Method::kLouvain) {
      if (r.quality.modularity > best->quality.modularity) best = &r;
    } else if (r.energy && best->energy && *r.energy < *best->energy) {
      best = &r;
    }
  }
  if (best == nullptr) throw InvalidArgument("no rows for method " + std::string(method_name(method)));
  return *best;
}

void to_json(nlohmann::json& j, const BenchRow& r) {
  j = nlohmann::json{{"graph", r.graph},
                     {"seed", r.seed},
                     {"p_intra", r.p_intra},
                     {"p_inter", r.p_inter},
                     {"vertices", r.vertices},
                     {"edges", r.edges},
                     {"truth_clusters", r.truth_clusters},
                     {"truth_modularity", r.truth_modularity},
                     {"method", method_name(r.method)},
                     {"k", r.k},
                     {"quality", r.quality},
                     {"match", r.match},
                     {"time_to_best_s", r.time_to_best_s},
                     {"solve_s", r.solve_s},
                     {"distance_s", r.distance_s},
                     {"stop_reason", r.stop_reason}};
  j["energy"] = r.energy ? nlohmann::json(*r.energy) : nlohmann::json(nullptr);
}

void to_json(nlohmann::json& j, const BenchReport& report) {
  j = nlohmann::json{{"suite", report.suite}, {"seeds", report.seeds}, {"rows", report.rows}};
  if (report.suite != "football") {
    nlohmann::json counts = nlohmann::json::object();
    for (const auto& c : best_intra_counts(report)) counts[std::string(method_name(c.method))] = c.wins;
    j["best_intra_counts"] = counts;
  }
}

std::string render_markdown(const BenchReport& report) {
  std::ostringstream md;
  md << "## Suite: " << report.suite << "\n\nSeeds:";
  for (auto s : report.seeds) md << ' ' << s;
  md << "\n\n";
  if (report.suite == "football") {
    render_football(report, md);
  } else {
    render_grid(report, md);
  }
  return md.str();
}

}  // namespace bmclust
