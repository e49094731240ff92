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

// Experiment driver behind the command-line tool: resolves a configuration,
// runs seed-selection algorithms and evaluates their top-k seed sets.

#ifndef IMRANK_EXPERIMENT_HPP_
#define IMRANK_EXPERIMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "imrank/diffusion.hpp"
#include "imrank/graph.hpp"
#include "imrank/greedy.hpp"
#include "imrank/imrank.hpp"
#include "imrank/ranking.hpp"

namespace imrank {

/// Invalid configuration; `field()` names the offending option.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

enum class RankerKind { kDegree, kInversedDegree, kStrength, kPageRank, kRandom };

struct RankerSpec {
  RankerKind kind = RankerKind::kDegree;
  std::uint64_t seed = 0;  // random only

  /// "degree", "inversed-degree", "strength", "pagerank" or "random:SEED".
  static RankerSpec parse(std::string_view text);
  std::string to_string() const;
  Ranking build(const Graph& graph) const;
};

/// One algorithm of a run or benchmark.
///
/// Text form: NAME[:OPT=VAL,...]. NAME is imrank, greedy, or a ranker name
/// (random takes its seed as random:SEED). imrank options: init, l, theta,
/// max_iter. greedy options: eval (exact|mc), trials, seed.
struct AlgorithmSpec {
  enum class Kind { kImrank, kGreedy, kRanker };
  Kind kind = Kind::kImrank;
  RankerSpec ranker;  // kRanker: the ranker; kImrank: the initial ranking
  LfaOptions lfa;
  std::size_t max_iterations = 10;
  bool greedy_exact = false;
  std::uint64_t greedy_trials = 1000;
  std::uint64_t greedy_seed = 0;

  /// `defaults` supplies values for options the text leaves out.
  static AlgorithmSpec parse(std::string_view text, const AlgorithmSpec& defaults);
  static AlgorithmSpec parse(std::string_view text) { return parse(text, AlgorithmSpec{}); }
  std::string to_string() const;
  nlohmann::json to_json() const;
};

struct ExperimentConfig {
  std::string graph_path;
  bool directed = true;
  ModelSpec model;
  std::vector<AlgorithmSpec> algorithms;
  std::vector<std::size_t> k_list{1, 5, 10, 15, 20, 25, 30, 35, 40, 45, 50};
  std::uint64_t eval_trials = 10000;
  std::uint64_t eval_seed = 0;
  std::string output_path;
  std::string format = "json";
  unsigned threads = 0;

  /// Keys: graph, directed, model, algo (string or list), init, l, theta,
  /// max_iter, greedy_eval, greedy_trials, greedy_seed, k (list or
  /// "1,5,10"), trials, eval_seed, out, format, threads. Throws ConfigError.
  static ExperimentConfig from_json(const nlohmann::json& options);
  /// Resolved configuration including defaults.
  nlohmann::json to_json() const;
  /// Checks k_list/trials against a loaded graph. Throws ConfigError.
  void validate(const Graph& graph) const;
};

struct KResult {
  std::size_t k = 0;
  SpreadEstimate estimate;
};

struct AlgorithmRun {
  AlgorithmSpec spec;
  std::vector<NodeId> seeds;  // top max(k_list), in order
  std::optional<ConvergenceReport> convergence;
  std::optional<GreedyTrace> greedy;
  std::vector<KResult> results;
  double init_seconds = 0.0;
  double algorithm_seconds = 0.0;
  double evaluation_seconds = 0.0;
};

/// Loads the graph and applies the model; throws ConfigError when the graph
/// has no probabilities and no model is given.
Graph load_experiment_graph(const ExperimentConfig& config);

AlgorithmRun run_algorithm(const Graph& graph, const AlgorithmSpec& spec,
                           const ExperimentConfig& config);

/// Result document of a single run. Wall-clock figures live under "timing"
/// only.
nlohmann::json run_to_json(const ExperimentConfig& config, const Graph& graph,
                           const AlgorithmRun& run);
/// k,spread,std_error,seconds
std::string run_to_csv(const AlgorithmRun& run);
/// algorithm,k,spread,std_error,seconds
std::string bench_to_csv(const std::vector<AlgorithmRun>& runs);

nlohmann::json estimate_to_json(const SpreadEstimate& estimate);

/// Parses "1,5,10" into a list.
std::vector<std::size_t> parse_k_list(std::string_view text);

}  // namespace imrank

#endif  // IMRANK_EXPERIMENT_HPP_
