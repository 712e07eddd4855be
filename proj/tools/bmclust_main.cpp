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

// bmclust command-line tool: generate, cluster, evaluate, bench.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bmclust/bench.hpp"
#include "bmclust/clustering.hpp"
#include "bmclust/error.hpp"
#include "bmclust/eval_truth.hpp"
#include "bmclust/generators.hpp"
#include "bmclust/graph_io.hpp"
#include "bmclust/quality.hpp"
#include "bmclust/runner.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitSolver = 4;

constexpr const char* kFootballUrl = "http://www-personal.umich.edu/~mejn/netdata/football.zip";

// "10s", "2.5m", "1h", "750ms" or a bare number of seconds.
double parse_duration(const std::string& text) {
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw bmclust::InvalidArgument("bad duration '" + text + "'");
  }
  const std::string unit = text.substr(pos);
  double scale = 1.0;
  if (unit.empty() || unit == "s") {
    scale = 1.0;
  } else if (unit == "ms") {
    scale = 1e-3;
  } else if (unit == "m") {
    scale = 60.0;
  } else if (unit == "h") {
    scale = 3600.0;
  } else {
    throw bmclust::InvalidArgument("bad duration unit in '" + text + "'");
  }
  if (!(value > 0.0)) throw bmclust::InvalidArgument("duration must be positive: '" + text + "'");
  return value * scale;
}

void write_json_file(const json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw bmclust::IoError("cannot open '" + path + "' for writing");
  out << j.dump(2) << '\n';
  if (!out) throw bmclust::IoError("write failed for '" + path + "'");
}

void write_text_file(const std::string& text, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw bmclust::IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw bmclust::IoError("write failed for '" + path.string() + "'");
}

bool is_gml_path(const std::string& path) {
  const std::string ext = fs::path(path).extension().string();
  return ext == ".gml" || ext == ".GML";
}

struct InputGraph {
  bmclust::Graph graph;
  std::optional<bmclust::Clustering> embedded_truth;
};

InputGraph load_input(const std::string& path, bool gml, const std::string& mapping_out) {
  InputGraph in;
  if (gml) {
    bmclust::GmlGraph g = bmclust::load_gml_subset(path);
    for (const auto& w : g.warnings) std::cerr << "warning: " << w << '\n';
    in.graph = std::move(g.graph);
    if (g.labels) in.embedded_truth = bmclust::Clustering::from_labels(std::span<const std::int64_t>(*g.labels));
    return in;
  }
  bmclust::EdgeListOptions options;
  options.remap_ids = !mapping_out.empty();
  bmclust::LoadedGraph loaded = bmclust::load_edge_list(path, options);
  if (!mapping_out.empty()) bmclust::write_id_mapping(loaded.original_ids, mapping_out);
  in.graph = std::move(loaded.graph);
  return in;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::string ppm;
  std::string sbm_sizes;
  bool sbm_desk = false;
  std::string paper_grid;
  std::vector<double> p;
  std::uint64_t seed = 1;
  std::vector<std::uint64_t> seeds{1, 2, 3};
  std::string out;
};

std::string grid_prefix(const fs::path& dir, const std::string& id, std::uint64_t seed) {
  return (dir / (id + "_s" + std::to_string(seed))).string();
}

int cmd_generate(const GenerateArgs& a) {
  const int modes = (!a.ppm.empty()) + (!a.sbm_sizes.empty()) + (a.sbm_desk ? 1 : 0) + (!a.paper_grid.empty());
  if (modes != 1) throw bmclust::InvalidArgument("choose exactly one of --ppm, --sbm, --sbm-desk, --paper-grid");

  if (!a.paper_grid.empty()) {
    const fs::path dir = a.out.empty() ? fs::path(a.paper_grid) : fs::path(a.out);
    fs::create_directories(dir);
    if (a.paper_grid == "ppm") {
      for (const auto& pt : bmclust::ppm_grid()) {
        for (auto s : a.seeds) {
          bmclust::write_generated(bmclust::generate_ppm(5, 50, pt.p_intra, pt.p_inter, s), grid_prefix(dir, pt.id, s));
        }
      }
    } else if (a.paper_grid == "sbm-desk") {
      for (const auto& pt : bmclust::sbm_grid()) {
        for (auto s : a.seeds) {
          bmclust::write_generated(bmclust::generate_sbm(bmclust::desk_sbm_spec(pt.p_intra, pt.p_inter, s)),
                                   grid_prefix(dir, pt.id, s));
        }
      }
    } else {
      throw bmclust::InvalidArgument("--paper-grid expects ppm or sbm-desk");
    }
    std::cout << "wrote grid to " << dir.string() << '\n';
    return 0;
  }

  if (a.sbm_desk && a.p.empty()) {
    const fs::path dir = a.out.empty() ? fs::path("sbm-desk") : fs::path(a.out);
    fs::create_directories(dir);
    for (const auto& pt : bmclust::sbm_grid()) {
      bmclust::write_generated(bmclust::generate_sbm(bmclust::desk_sbm_spec(pt.p_intra, pt.p_inter, a.seed)),
                               grid_prefix(dir, pt.id, a.seed));
    }
    std::cout << "wrote desk grid to " << dir.string() << '\n';
    return 0;
  }
  if (a.p.size() != 2) throw bmclust::InvalidArgument("--p P_INTRA P_INTER is required");

  bmclust::GeneratedGraph gen;
  std::string default_prefix;
  if (!a.ppm.empty()) {
    const auto x = a.ppm.find('x');
    if (x == std::string::npos) throw bmclust::InvalidArgument("--ppm expects KxSIZE, e.g. 5x50");
    std::size_t k = 0;
    std::size_t size = 0;
    try {
      k = std::stoul(a.ppm.substr(0, x));
      size = std::stoul(a.ppm.substr(x + 1));
    } catch (const std::exception&) {
      throw bmclust::InvalidArgument("--ppm expects KxSIZE, e.g. 5x50");
    }
    gen = bmclust::generate_ppm(k, size, a.p[0], a.p[1], a.seed);
    default_prefix = "ppm_" + a.ppm + "_s" + std::to_string(a.seed);
  } else if (a.sbm_desk) {
    gen = bmclust::generate_sbm(bmclust::desk_sbm_spec(a.p[0], a.p[1], a.seed));
    default_prefix = "sbm-desk_s" + std::to_string(a.seed);
  } else {
    bmclust::BlockSpec spec;
    std::stringstream ss(a.sbm_sizes);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        spec.sizes.push_back(std::stoul(item));
      } catch (const std::exception&) {
        throw bmclust::InvalidArgument("--sbm expects comma-separated block sizes");
      }
    }
    spec.p_intra = a.p[0];
    spec.p_inter = a.p[1];
    spec.seed = a.seed;
    gen = bmclust::generate_sbm(spec);
    default_prefix = "sbm_s" + std::to_string(a.seed);
  }
  const std::string prefix = a.out.empty() ? default_prefix : a.out;
  bmclust::write_generated(gen, prefix);
  std::cout << "wrote " << prefix << ".{edges,labels,json}: " << gen.graph.vertex_count() << " vertices, "
            << gen.graph.edge_count() << " edges\n";
  return 0;
}

// ----------------------------------------------------------------- cluster

struct ClusterArgs {
  std::string input;
  std::string config_path;
  std::string method;
  std::size_t k = 0;
  std::string budget;
  std::size_t max_sweeps = 0;
  std::size_t stall = 0;
  std::size_t replicas = 0;
  std::size_t instances = 0;
  double tmin = 0.0;
  double tmax = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  bool sequential = false;
  bool gml = false;
  std::string truth;
  std::string labels_out;
  std::string out;
  std::string trace;
  std::string remap_ids;
};

int cmd_cluster(const ClusterArgs& a, const CLI::App& sub) {
  bmclust::RunConfig config;
  if (!a.config_path.empty()) {
    std::ifstream in(a.config_path);
    if (!in) throw bmclust::IoError("cannot open config '" + a.config_path + "'");
    json j;
    try {
      in >> j;
      // A result JSON can be replayed directly.
      config = j.contains("config") ? j.at("config").get<bmclust::RunConfig>() : j.get<bmclust::RunConfig>();
    } catch (const json::exception& e) {
      throw bmclust::InvalidArgument(std::string("bad config JSON: ") + e.what());
    }
  }
  auto given = [&sub](const char* name) { return sub.count(name) > 0; };
  if (given("--method")) config.method = bmclust::parse_method(a.method);
  else if (a.config_path.empty()) throw bmclust::InvalidArgument("--method is required");
  if (given("--k")) config.k = a.k;
  if (given("--seed")) config.seed = a.seed;
  if (given("--budget")) config.budget.wall_seconds = parse_duration(a.budget);
  if (given("--max-sweeps")) config.budget.max_barriers = a.max_sweeps;
  if (given("--stall")) config.budget.stall_barriers = a.stall;
  if (given("--replicas")) config.replicas = a.replicas;
  if (given("--instances")) config.instances = a.instances;
  if (given("--tmin")) config.t_min = a.tmin;
  if (given("--tmax")) config.t_max = a.tmax;
  if (given("--alpha")) config.alpha = a.alpha;
  if (given("--beta")) config.beta = a.beta;
  if (given("--sequential")) config.scan = bmclust::ScanOrder::kSequential;
  if (given("--threads")) config.threads = a.threads;
  else if (a.config_path.empty()) config.threads = bmclust::default_thread_count(1);
  if (!a.input.empty()) config.input = a.input;
  if (given("--gml")) config.input_format = "gml";
  else if (a.config_path.empty() && is_gml_path(config.input)) config.input_format = "gml";
  if (given("--truth")) config.truth = a.truth;
  if (given("--labels-out")) config.labels_out = a.labels_out;
  if (given("--out")) config.output = a.out;
  if (given("--trace")) config.trace_out = a.trace;
  if (config.method != bmclust::Method::kLouvain && !config.budget.max_barriers && !config.budget.wall_seconds &&
      !config.budget.target_energy) {
    config.budget.wall_seconds = 60.0;
  }
  config.validate();
  if (config.input.empty()) throw bmclust::InvalidArgument("an input graph is required");

  const InputGraph in = load_input(config.input, config.input_format == "gml", a.remap_ids);
  bmclust::RunResult result;
  try {
    result = bmclust::run_method(in.graph, config);
  } catch (const bmclust::InvalidArgument&) {
    throw;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kExitSolver;
  }
  if (!config.truth.empty()) {
    const auto raw = bmclust::load_labels(config.truth, in.graph.vertex_count());
    result.match = bmclust::match_clusters(bmclust::Clustering::from_labels(std::span<const std::int64_t>(raw)),
                                           result.clustering);
  } else if (in.embedded_truth) {
    result.match = bmclust::match_clusters(*in.embedded_truth, result.clustering);
  }
  if (!config.trace_out.empty()) {
    std::ofstream trace(config.trace_out);
    if (!trace) throw bmclust::IoError("cannot open trace '" + config.trace_out + "'");
    bmclust::write_trace_jsonl(result.trace, trace);
  }
  if (!config.labels_out.empty()) bmclust::write_labels(result.clustering.labels(), config.labels_out);
  write_json_file(bmclust::result_json(config, result), config.output);
  return 0;
}

// ---------------------------------------------------------------- evaluate

int cmd_evaluate(const std::string& graph_path, const std::string& truth_path, const std::string& found_path) {
  const InputGraph in = load_input(graph_path, is_gml_path(graph_path), "");
  const std::size_t n = in.graph.vertex_count();
  const auto found = bmclust::Clustering::from_labels(
      std::span<const std::int64_t>(bmclust::load_labels(found_path, n)));
  json j;
  j["vertices"] = n;
  j["found"] = bmclust::quality_report(in.graph, found);
  std::optional<bmclust::Clustering> truth = in.embedded_truth;
  if (!truth_path.empty()) {
    truth = bmclust::Clustering::from_labels(std::span<const std::int64_t>(bmclust::load_labels(truth_path, n)));
  }
  if (truth) {
    j["truth"] = bmclust::quality_report(in.graph, *truth);
    j["match"] = bmclust::match_clusters(*truth, found);
  }
  std::cout << j.dump(2) << '\n';
  return 0;
}

// ------------------------------------------------------------------- bench

struct BenchArgs {
  std::string suite;
  std::vector<std::uint64_t> seeds{1, 2, 3};
  std::string budget = "60s";
  std::size_t stall = 500;
  std::size_t replicas = 32;
  unsigned threads = 0;
  std::string gml;
  std::size_t runs = 10;
  std::string out_dir = ".";
};

int cmd_bench(const BenchArgs& a, const CLI::App& sub) {
  bmclust::BenchOptions options;
  options.seeds = a.seeds;
  options.budget = bmclust::Budget{};
  options.budget.wall_seconds = parse_duration(a.budget);
  options.budget.stall_barriers = a.stall;
  options.replicas = a.replicas;
  options.threads = sub.count("--threads") ? a.threads : bmclust::default_thread_count(1);
  options.football_runs = a.runs;
  options.progress = [](const bmclust::BenchRow& r) {
    std::cerr << r.graph << " seed " << r.seed << ' ' << bmclust::method_name(r.method) << ": K_intra "
              << r.quality.mean_intra << ", K_inter " << r.quality.mean_inter << ", Q " << r.quality.modularity
              << ", clusters " << r.quality.clusters << ", t " << r.time_to_best_s << "s\n";
  };
  bmclust::BenchReport report;
  if (a.suite == "ppm") {
    report = bmclust::bench_ppm(options);
  } else if (a.suite == "sbm-desk") {
    report = bmclust::bench_sbm_desk(options);
  } else if (a.suite == "football") {
    std::string path = a.gml;
    if (path.empty()) {
      if (const char* env = std::getenv("BMCLUST_FOOTBALL_GML")) path = env;
    }
    if (path.empty()) {
      throw bmclust::InvalidArgument(std::string("football needs --gml PATH or BMCLUST_FOOTBALL_GML; get it from ") +
                                     kFootballUrl);
    }
    options.football_gml = path;
    report = bmclust::bench_football(options);
  } else {
    throw bmclust::InvalidArgument("unknown suite '" + a.suite + "' (ppm, sbm-desk, football)");
  }
  const fs::path dir(a.out_dir);
  fs::create_directories(dir);
  const std::string md = bmclust::render_markdown(report);
  write_text_file(md, dir / (a.suite + ".md"));
  write_json_file(json(report), (dir / (a.suite + ".json")).string());
  std::cout << md;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph clustering with Boltzmann-machine annealing and Louvain baselines"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Generate planted-partition or block-model graphs");
  g->add_option("--ppm", gen.ppm, "Planted partition KxSIZE, e.g. 5x50");
  g->add_option("--sbm", gen.sbm_sizes, "Block model with comma-separated sizes");
  g->add_flag("--sbm-desk", gen.sbm_desk, "10 blocks with sizes in [35,200]; all G4-G12 settings without --p");
  g->add_option("--paper-grid", gen.paper_grid, "Emit a preset suite: ppm or sbm-desk");
  g->add_option("--p", gen.p, "P_INTRA P_INTER")->expected(2);
  g->add_option("--seed", gen.seed, "Seed");
  g->add_option("--seeds", gen.seeds, "Seeds for --paper-grid");
  g->add_option("--out", gen.out, "Output prefix (or directory for grids)");

  ClusterArgs cl;
  auto* c = app.add_subcommand("cluster", "Cluster one graph and write a result JSON");
  c->add_option("input", cl.input, "Edge list (or .gml) file");
  c->add_option("--config", cl.config_path, "Run config JSON (or a previous result JSON)");
  c->add_option("--method", cl.method, "qp-bm, kmed-bm or louvain");
  c->add_option("--k", cl.k, "Cluster count (Boltzmann methods only)");
  c->add_option("--budget", cl.budget, "Wall-clock budget, e.g. 10s");
  c->add_option("--max-sweeps", cl.max_sweeps, "Barrier limit (one sweep per barrier)");
  c->add_option("--stall", cl.stall, "Stop after this many barriers without improvement (0 disables)");
  c->add_option("--replicas", cl.replicas, "Replica count");
  c->add_option("--instances", cl.instances, "Independent tempering instances");
  c->add_option("--tmin", cl.tmin, "Lowest ladder temperature");
  c->add_option("--tmax", cl.tmax, "Highest ladder temperature");
  c->add_option("--alpha", cl.alpha, "K-medoids separation weight");
  c->add_option("--beta", cl.beta, "K-medoids compactness weight");
  c->add_option("--seed", cl.seed, "Seed");
  c->add_option("--threads", cl.threads, "Worker threads (default BMCLUST_THREADS or 1; 0 = all cores)");
  c->add_flag("--sequential", cl.sequential, "Sequential instead of random move scan");
  c->add_flag("--gml", cl.gml, "Input is GML");
  c->add_option("--truth", cl.truth, "Ground-truth labels to match against");
  c->add_option("--labels-out", cl.labels_out, "Write labels TSV here");
  c->add_option("--out", cl.out, "Result JSON path (default stdout)");
  c->add_option("--trace", cl.trace, "Write a JSON-lines trace here");
  c->add_option("--remap-ids", cl.remap_ids, "Compact sparse vertex ids and write the mapping here");

  std::string eval_graph;
  std::string eval_truth;
  std::string eval_found;
  auto* e = app.add_subcommand("evaluate", "Quality and ground-truth match reports");
  e->add_option("--graph", eval_graph, "Graph file")->required();
  e->add_option("--truth", eval_truth, "Ground-truth labels");
  e->add_option("--found", eval_found, "Labels to evaluate")->required();

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Run a benchmark suite and emit markdown + JSON tables");
  b->add_option("suite", bench.suite, "ppm, sbm-desk or football")->required();
  b->add_option("--seeds", bench.seeds, "Seeds");
  b->add_option("--budget", bench.budget, "Per-solve wall-clock budget");
  b->add_option("--stall", bench.stall, "Stall barriers");
  b->add_option("--replicas", bench.replicas, "Replica count");
  b->add_option("--threads", bench.threads, "Worker threads");
  b->add_option("--gml", bench.gml, "Football GML path");
  b->add_option("--runs", bench.runs, "Seeded runs for the football suite");
  b->add_option("--out-dir", bench.out_dir, "Directory for <suite>.md and <suite>.json");

  auto* f = app.add_subcommand("fetch-football", "Print where to download the football dataset");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    return app.exit(err) == 0 ? 0 : kExitUsage;
  }

  try {
    if (g->parsed()) return cmd_generate(gen);
    if (c->parsed()) return cmd_cluster(cl, *c);
    if (e->parsed()) return cmd_evaluate(eval_graph, eval_truth, eval_found);
    if (b->parsed()) return cmd_bench(bench, *b);
    if (f->parsed()) {
      std::cout << kFootballUrl << "\n"
                << "Unzip it and pass football.gml via --gml or BMCLUST_FOOTBALL_GML.\n";
      return 0;
    }
  } catch (const bmclust::InvalidArgument& err) {
    std::cerr << "config error: " << err.what() << '\n';
    return kExitUsage;
  } catch (const bmclust::IoError& err) {
    std::cerr << "io error: " << err.what() << '\n';
    return kExitIo;
  } catch (const fs::filesystem_error& err) {
    std::cerr << "io error: " << err.what() << '\n';
    return kExitIo;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitSolver;
  }
  return 0;
}
