// Copyright 2026 The Authors.
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "imrank/experiment.hpp"
#include "imrank/generators.hpp"
#include "test_support.hpp"

using namespace imrank;
using nlohmann::json;

namespace {

const std::string kData = IMRANK_TEST_DATA;

std::string error_field(const json& options) {
  try {
    ExperimentConfig::from_json(options);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}

json without_timing(json j) {
  j.erase("timing");
  return j;
}

std::string temp_graph(const Graph& g, const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "imrank_test_experiment";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / name).string();
  save_graph(path, g, ModelSpec{});
  return path;
}

}  // namespace

TEST_CASE("config defaults and echo") {
  const auto c = ExperimentConfig::from_json(json::object());
  CHECK(c.k_list == std::vector<std::size_t>{1, 5, 10, 15, 20, 25, 30, 35, 40, 45, 50});
  REQUIRE(c.algorithms.size() == 1);
  CHECK(c.algorithms[0].kind == AlgorithmSpec::Kind::kImrank);
  CHECK(c.algorithms[0].lfa.depth == 1);
  CHECK(c.algorithms[0].lfa.theta == 0.0);
  CHECK(c.algorithms[0].max_iterations == 10);
  const json echo = c.to_json();
  CHECK(echo["trials"] == 10000);
  CHECK(echo["algorithms"][0]["init"] == "degree");
}

TEST_CASE("config: algorithm strings") {
  AlgorithmSpec defaults;
  defaults.lfa.depth = 3;
  const auto a = AlgorithmSpec::parse("imrank:init=random:7,l=2,theta=0.01", defaults);
  CHECK(a.ranker.kind == RankerKind::kRandom);
  CHECK(a.ranker.seed == 7);
  CHECK(a.lfa.depth == 2);
  CHECK(a.lfa.theta == 0.01);
  CHECK(AlgorithmSpec::parse("imrank", defaults).lfa.depth == 3);
  CHECK(AlgorithmSpec::parse(a.to_string()).to_string() == a.to_string());
  const auto g = AlgorithmSpec::parse("greedy:eval=mc,trials=300,seed=4");
  CHECK_FALSE(g.greedy_exact);
  CHECK(g.greedy_trials == 300);
  CHECK(AlgorithmSpec::parse("greedy:exact").greedy_exact);
  CHECK(AlgorithmSpec::parse("random:5").ranker.seed == 5);
  CHECK(AlgorithmSpec::parse("pagerank").to_json()["pagerank"]["teleport"] == 0.15);
}

TEST_CASE("config errors name the field") {
  CHECK(error_field({{"k", "5,1"}}) == "k");
  CHECK(error_field({{"k", "0"}}) == "k");
  CHECK(error_field({{"k", "a"}}) == "k");
  CHECK(error_field({{"trials", 0}}) == "trials");
  CHECK(error_field({{"model", "bogus"}}) == "model");
  CHECK(error_field({{"algo", "magic"}}) == "algo");
  CHECK(error_field({{"l", 0}}) == "l");
  CHECK(error_field({{"theta", 1.5}}) == "theta");
  CHECK(error_field({{"init", "nope"}}) == "init");
  CHECK(error_field({{"format", "xml"}}) == "format");
  CHECK(error_field({{"max_iter", 0}}) == "max-iter");
  CHECK(error_field({{"algo", "imrank:l=0"}}) == "l");
}

TEST_CASE("graph without probabilities needs a model; k bounded by n") {
  auto c = ExperimentConfig::from_json({{"graph", kData + "/g5.txt"}, {"k", "2"}});
  CHECK_THROWS_AS(load_experiment_graph(c), ConfigError);
  c.model = ModelSpec::parse("uniform:0.2");
  const Graph g = load_experiment_graph(c);
  c.k_list = {6};
  CHECK_THROWS_AS(run_algorithm(g, c.algorithms[0], c), ConfigError);
}

TEST_CASE("run: p = 0 gives exact spreads for every algorithm") {
  const std::string path = temp_graph(assign_uniform(random_directed(12, 30, 3), 0.0), "zero.txt");
  for (const char* algo : {"imrank", "greedy", "greedy:exact", "degree", "pagerank", "random:3",
                           "strength", "inversed-degree"}) {
    const auto c = ExperimentConfig::from_json({{"graph", path}, {"algo", algo}, {"k", "1,2"}, {"trials", 500}});
    const Graph g = load_experiment_graph(c);
    const auto run = run_algorithm(g, c.algorithms[0], c);
    REQUIRE(run.results.size() == 2);
    CHECK(run.results[0].estimate.mean == 1.0);
    CHECK(run.results[1].estimate.mean == 2.0);
    CHECK(run.results[1].estimate.std_error == 0.0);
  }
}

TEST_CASE("run: G5 with IMRank from degree ranking") {
  const auto c = ExperimentConfig::from_json({{"graph", kData + "/g5.txt"},
                                              {"model", "uniform:0.2"},
                                              {"algo", "imrank"},
                                              {"init", "degree"},
                                              {"k", "2"},
                                              {"trials", 100000},
                                              {"eval_seed", 5}});
  const Graph g = load_experiment_graph(c);
  const auto run = run_algorithm(g, c.algorithms[0], c);
  const json j = run_to_json(c, g, run);
  const std::string reason = j["convergence"]["stop_reason"];
  CHECK((reason == "ranking-fixpoint" || reason == "top-k-stable"));
  const SeedSet pair(run.seeds.begin(), run.seeds.begin() + 2);
  const double exact = exact_spread(g, pair);
  CHECK(std::abs(j["results"][0]["spread"].get<double>() - exact) <=
        3 * j["results"][0]["std_error"].get<double>());
  CHECK(run_to_csv(run).rfind("k,spread,std_error,seconds\n2,", 0) == 0);
}

TEST_CASE("run: repeated runs give identical documents apart from timing") {
  const std::string path = temp_graph(assign_wic(barabasi_albert(200, 2, 9)), "ba.txt");
  for (const char* algo : {"imrank:l=2", "greedy:trials=100", "pagerank"}) {
    const auto c = ExperimentConfig::from_json({{"graph", path}, {"algo", algo}, {"k", "1,5,10"}, {"trials", 300}});
    const Graph g = load_experiment_graph(c);
    const json a = run_to_json(c, g, run_algorithm(g, c.algorithms[0], c));
    const json b = run_to_json(c, g, run_algorithm(g, c.algorithms[0], c));
    CHECK(without_timing(a) == without_timing(b));
  }
}

TEST_CASE("bench: shared evaluation seed") {
  const std::string path = temp_graph(assign_uniform(random_directed(10, 20, 4), 0.0), "zero2.txt");
  const auto c = ExperimentConfig::from_json(
      {{"graph", path}, {"algo", json::array({"degree", "imrank"})}, {"k", "1"}, {"trials", 100}});
  const Graph g = load_experiment_graph(c);
  std::vector<AlgorithmRun> runs;
  for (const auto& spec : c.algorithms) runs.push_back(run_algorithm(g, spec, c));
  const std::string csv = bench_to_csv(runs);
  CHECK(csv.rfind("algorithm,k,spread,std_error,seconds\n", 0) == 0);
  CHECK(csv.find("\"degree\",1,1,0,") != std::string::npos);
  CHECK(csv.find(",1,1,0,", csv.find("imrank")) != std::string::npos);
}

TEST_CASE("bench: deeper paths and IMRank refinement on a 500-node WIC graph") {
  const std::string path = temp_graph(assign_wic(barabasi_albert(500, 2, 21)), "ba500.txt");
  const auto c = ExperimentConfig::from_json({{"graph", path},
                                              {"algo", json::array({"imrank:l=1", "imrank:l=2", "degree"})},
                                              {"init", "degree"},
                                              {"k", "10,50"},
                                              {"trials", 5000},
                                              {"eval_seed", 1}});
  const Graph g = load_experiment_graph(c);
  const auto l1 = run_algorithm(g, c.algorithms[0], c);
  const auto l2 = run_algorithm(g, c.algorithms[1], c);
  const auto degree = run_algorithm(g, c.algorithms[2], c);
  auto combined = [](const KResult& a, const KResult& b) {
    return std::hypot(a.estimate.std_error, b.estimate.std_error);
  };
  CHECK(l2.results[1].estimate.mean >= l1.results[1].estimate.mean - 2 * combined(l1.results[1], l2.results[1]));
  for (std::size_t i = 0; i < 2; ++i)
    CHECK(l1.results[i].estimate.mean >=
          degree.results[i].estimate.mean - 2 * combined(l1.results[i], degree.results[i]));
}
