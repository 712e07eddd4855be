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

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bmclust/bench.hpp"
#include "bmclust/error.hpp"
#include "bmclust/generators.hpp"
#include "bmclust/runner.hpp"
#include "test_util.hpp"

namespace bmclust {
namespace {

RunConfig bm_config(Method m, std::size_t k) {
  RunConfig c;
  c.method = m;
  c.k = k;
  c.replicas = 8;
  c.budget.max_barriers = 60;
  c.budget.stall_barriers = 0;
  c.seed = 9;
  return c;
}

TEST(RunConfig, MethodSpecificRules) {
  RunConfig louvain;
  EXPECT_NO_THROW(louvain.validate());
  louvain.k = 5;
  EXPECT_THROW(louvain.validate(), InvalidArgument);

  RunConfig qp = bm_config(Method::kQpBm, 3);
  EXPECT_NO_THROW(qp.validate());
  qp.k.reset();
  EXPECT_THROW(qp.validate(), InvalidArgument);
  qp.k = 0;
  EXPECT_THROW(qp.validate(), InvalidArgument);

  RunConfig alpha = bm_config(Method::kQpBm, 3);
  alpha.alpha = 1.0;
  EXPECT_THROW(alpha.validate(), InvalidArgument);
  alpha.method = Method::kKmedBm;
  EXPECT_NO_THROW(alpha.validate());

  RunConfig nobudget = bm_config(Method::kKmedBm, 3);
  nobudget.budget.max_barriers.reset();
  EXPECT_THROW(nobudget.validate(), InvalidArgument);
}

TEST(RunConfig, MethodNames) {
  for (Method m : {Method::kQpBm, Method::kKmedBm, Method::kLouvain}) EXPECT_EQ(parse_method(method_name(m)), m);
  EXPECT_THROW(parse_method("gurobi"), InvalidArgument);
}

TEST(RunConfig, JsonRoundTrip) {
  RunConfig c = bm_config(Method::kKmedBm, 4);
  c.t_min = 0.01;
  c.alpha = 1.5;
  c.budget.wall_seconds = 3.0;
  c.scan = ScanOrder::kSequential;
  c.input = "g.edges";
  c.temperatures = {0.1, 0.2};
  const nlohmann::json j = c;
  const RunConfig back = j.get<RunConfig>();
  EXPECT_EQ(nlohmann::json(back), j);
  EXPECT_EQ(back.method, Method::kKmedBm);
  EXPECT_EQ(back.k, 4u);
  EXPECT_EQ(back.scan, ScanOrder::kSequential);
  EXPECT_FALSE(back.t_max.has_value());
}

TEST(RunConfig, JsonRejectsUnknownValues) {
  EXPECT_THROW(nlohmann::json({{"method", "nope"}}).get<RunConfig>(), InvalidArgument);
  EXPECT_THROW(nlohmann::json({{"method", "louvain"}, {"scan", "zigzag"}}).get<RunConfig>(), InvalidArgument);
}

TEST(RunMethod, ReplayFromConfigEchoGivesSameLabels) {
  const GeneratedGraph gen = generate_ppm(3, 20, 0.8, 0.1, 2);
  for (Method m : {Method::kQpBm, Method::kKmedBm, Method::kLouvain}) {
    RunConfig c = m == Method::kLouvain ? RunConfig{} : bm_config(m, 3);
    c.method = m;
    const RunResult first = run_method(gen.graph, c);
    const nlohmann::json out = result_json(c, first);
    const RunConfig echoed = out.at("config").get<RunConfig>();
    const RunResult second = run_method(gen.graph, echoed);
    EXPECT_EQ(first.clustering, second.clustering) << method_name(m);
    EXPECT_EQ(out.at("labels").size(), 60u);
  }
}

TEST(RunMethod, ResultJsonFields) {
  const GeneratedGraph gen = generate_ppm(3, 20, 0.8, 0.1, 2);
  RunConfig c = bm_config(Method::kKmedBm, 3);
  c.alpha = 2.5;
  const RunResult r = run_method(gen.graph, c);
  ASSERT_TRUE(r.tradeoffs.has_value());
  EXPECT_EQ(r.tradeoffs->alpha, 2.5);
  EXPECT_EQ(r.medoids.size(), 3u);
  const nlohmann::json j = result_json(c, r);
  for (const char* key : {"labels", "energy", "quality", "time_to_best_s", "distance_s", "solve_s", "config",
                          "trace", "medoids", "tradeoffs", "stop_reason"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_LE(r.time_to_best_s, r.solve_s);
}

TEST(RunMethod, KLargerThanGraphIsConfigError) {
  const Graph g = testing::worked_example();
  EXPECT_THROW(run_method(g, bm_config(Method::kQpBm, 8)), InvalidArgument);
}

TEST(Bench, PpmSuiteTablesAndCounts) {
  BenchOptions options;
  options.seeds = {1};
  options.budget = Budget{};
  options.budget.max_barriers = 40;
  options.replicas = 8;
  std::size_t calls = 0;
  options.progress = [&](const BenchRow&) { ++calls; };
  const BenchReport report = bench_ppm(options);
  EXPECT_EQ(report.rows.size(), 9u);
  EXPECT_EQ(calls, 9u);
  const std::string md = render_markdown(report);
  for (const char* needle : {"QP Boltzmann", "K-med Boltzmann", "Louvain", "Count Best of 3", "Time to sol (s)",
                             "| G1 |", "K_inter < K"}) {
    EXPECT_NE(md.find(needle), std::string::npos) << needle;
  }
  std::size_t wins = 0;
  for (const auto& c : best_intra_counts(report)) wins += c.wins;
  EXPECT_GE(wins, 3u);
  const nlohmann::json j = report;
  EXPECT_EQ(j.at("rows").size(), 9u);
  EXPECT_TRUE(j.contains("best_intra_counts"));
}

TEST(Bench, BestRunSelection) {
  BenchReport report;
  report.suite = "football";
  BenchRow a;
  a.method = Method::kQpBm;
  a.energy = 3.0;
  a.seed = 1;
  BenchRow b = a;
  b.energy = 2.0;
  b.seed = 2;
  BenchRow l;
  l.method = Method::kLouvain;
  l.quality.modularity = 0.4;
  l.seed = 1;
  BenchRow l2 = l;
  l2.quality.modularity = 0.5;
  l2.seed = 2;
  report.rows = {a, b, l, l2};
  EXPECT_EQ(best_run(report, Method::kQpBm).seed, 2u);
  EXPECT_EQ(best_run(report, Method::kLouvain).seed, 2u);
  EXPECT_THROW(best_run(report, Method::kKmedBm), InvalidArgument);
  EXPECT_NE(render_markdown(report).find("Similarity to ground-truth clusters"), std::string::npos);
}

TEST(Bench, FootballNeedsPath) {
  EXPECT_THROW(bench_football(BenchOptions{}), InvalidArgument);
}

TEST(Runner, ThreadCountFromEnvironment) {
  ::setenv("BMCLUST_THREADS", "3", 1);
  EXPECT_EQ(default_thread_count(1), 3u);
  ::setenv("BMCLUST_THREADS", "junk", 1);
  EXPECT_EQ(default_thread_count(2), 2u);
  ::unsetenv("BMCLUST_THREADS");
  EXPECT_EQ(default_thread_count(1), 1u);
}

// ------------------------------------------------------------------ CLI

int run_cli(const std::string& args) {
  const std::string cmd = std::string(BMCLUST_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = testing::temp_path("cli");
    std::filesystem::create_directories(dir_);
    prefix_ = (dir_ / "g1").string();
    ASSERT_EQ(run_cli("generate --ppm 5x50 --p 0.9 0.1 --seed 1 --out " + prefix_), 0);
  }
  std::filesystem::path dir_;
  std::string prefix_;
};

TEST_F(Cli, GenerateWritesFilesAndNeedsP) {
  EXPECT_TRUE(std::filesystem::exists(prefix_ + ".edges"));
  EXPECT_TRUE(std::filesystem::exists(prefix_ + ".labels"));
  EXPECT_TRUE(std::filesystem::exists(prefix_ + ".json"));
  EXPECT_EQ(run_cli("generate --ppm 5x50 --seed 1 --out " + prefix_ + "_x"), 2);
  EXPECT_EQ(run_cli("generate --ppm fivexfifty --p 0.9 0.1"), 2);
  EXPECT_EQ(run_cli("generate --sbm-desk --seed 1 --out " + (dir_ / "desk").string()), 0);
  EXPECT_TRUE(std::filesystem::exists(dir_ / "desk" / "G4_s1.edges"));
  EXPECT_TRUE(std::filesystem::exists(dir_ / "desk" / "G12_s1.json"));
}

TEST_F(Cli, ClusterLouvainFindsFiveClusters) {
  const auto out = dir_ / "louvain.json";
  ASSERT_EQ(run_cli("cluster --method louvain " + prefix_ + ".edges --out " + out.string()), 0);
  const auto j = nlohmann::json::parse(slurp(out));
  EXPECT_EQ(j.at("quality").at("clusters"), 5);
}

TEST_F(Cli, ClusterQpWithTruthAndTrace) {
  const auto out = dir_ / "qp.json";
  const auto trace = dir_ / "qp.trace.jsonl";
  ASSERT_EQ(run_cli("cluster --method qp-bm --k 5 --budget 10s --replicas 8 " + prefix_ + ".edges --truth " +
                    prefix_ + ".labels --trace " + trace.string() + " --out " + out.string()),
            0);
  const auto j = nlohmann::json::parse(slurp(out));
  EXPECT_TRUE(j.at("quality").at("inequality_lower").get<bool>());
  EXPECT_TRUE(j.at("quality").at("inequality_upper").get<bool>());
  EXPECT_DOUBLE_EQ(j.at("match").at("mean_jtilde").get<double>(), 1.0);
  EXPECT_EQ(j.at("trace"), trace.string());
  EXPECT_FALSE(slurp(trace).empty());
}

TEST_F(Cli, ExitCodesByCategory) {
  EXPECT_EQ(run_cli("cluster --method louvain --k 5 " + prefix_ + ".edges"), 2);
  EXPECT_EQ(run_cli("cluster --method qp-bm " + prefix_ + ".edges"), 2);
  EXPECT_EQ(run_cli("cluster --method nope " + prefix_ + ".edges"), 2);
  EXPECT_EQ(run_cli("cluster --method louvain /nonexistent/x.edges"), 3);
  EXPECT_EQ(run_cli("cluster --method louvain " + prefix_ + ".edges --out /nonexistent/dir/out.json"), 3);
  EXPECT_EQ(run_cli("frobnicate"), 2);
}

TEST_F(Cli, SameSeedByteIdenticalLabels) {
  for (const char* method : {"louvain", "qp-bm --k 5", "kmed-bm --k 5"}) {
    const auto a = dir_ / "a.tsv";
    const auto b = dir_ / "b.tsv";
    const std::string common =
        std::string("cluster --method ") + method + " --seed 4 --max-sweeps 50 --stall 0 --replicas 8 " + prefix_ +
        ".edges --out " + (dir_ / "r.json").string() + " --labels-out ";
    ASSERT_EQ(run_cli(common + a.string()), 0) << method;
    ASSERT_EQ(run_cli(common + b.string()), 0) << method;
    EXPECT_EQ(slurp(a), slurp(b)) << method;
    EXPECT_FALSE(slurp(a).empty());
  }
}

TEST_F(Cli, ReplayFromResultJson) {
  const auto first = dir_ / "first.json";
  ASSERT_EQ(run_cli("cluster --method kmed-bm --k 5 --max-sweeps 30 --replicas 8 --seed 3 " + prefix_ +
                    ".edges --out " + first.string()),
            0);
  const auto second = dir_ / "second.json";
  ASSERT_EQ(run_cli("cluster --config " + first.string() + " --out " + second.string()), 0);
  EXPECT_EQ(nlohmann::json::parse(slurp(first)).at("labels"), nlohmann::json::parse(slurp(second)).at("labels"));
}

TEST_F(Cli, EvaluateTruthAgainstTruth) {
  const std::string cmd = std::string(BMCLUST_CLI_PATH) + " evaluate --graph " + prefix_ + ".edges --truth " +
                          prefix_ + ".labels --found " + prefix_ + ".labels > " + (dir_ / "eval.json").string();
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  const auto j = nlohmann::json::parse(slurp(dir_ / "eval.json"));
  EXPECT_DOUBLE_EQ(j.at("match").at("mean_jtilde").get<double>(), 1.0);
  std::ofstream short_labels(dir_ / "short.labels");
  short_labels << "0\t0\n1\t0\n";
  short_labels.close();
  EXPECT_NE(run_cli("evaluate --graph " + prefix_ + ".edges --found " + (dir_ / "short.labels").string()), 0);
}

TEST_F(Cli, FetchFootballPrintsUrl) {
  const std::string cmd = std::string(BMCLUST_CLI_PATH) + " fetch-football > " + (dir_ / "url.txt").string();
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_NE(slurp(dir_ / "url.txt").find("football.zip"), std::string::npos);
}

}  // namespace
}  // namespace bmclust
