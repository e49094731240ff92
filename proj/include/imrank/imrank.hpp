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

// Ranking-based marginal influence estimation and the IMRank iteration.
//
// Given a ranking r, the ranking-based marginal of the node at rank i is
// M_r(r_i) = I({r_1..r_i}) - I({r_1..r_{i-1}}). IMRank repeatedly estimates
// M_r for the current ranking and re-sorts nodes by it until the ranking
// (or its top-k set) stops changing.

#ifndef IMRANK_IMRANK_HPP_
#define IMRANK_IMRANK_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "imrank/diffusion.hpp"
#include "imrank/graph.hpp"
#include "imrank/ranking.hpp"

namespace imrank {

struct MarginalScores {
  std::vector<double> scores;  // indexed by node id
  Ranking ranking_used;
};

/// Last-to-first allocation. Every node starts with score 1; scanning ranks
/// n..2, each node hands a share of its current score to its higher-ranked
/// in-neighbors, visited from the highest rank down:
///   share(u) = M(v) · p(u,v) · Π_{earlier u'} (1 − p(u',v)).
/// Total score is conserved. Throws std::invalid_argument on size mismatch.
MarginalScores lfa_scores(const Graph& graph, const Ranking& ranking);

struct ReachProbability {
  NodeId source = 0;
  double rho = 0.0;
};

/// Noisy-or probability that each higher-ranked node reaches `target` along
/// influence paths of at most `max_hops` arcs: simple reverse paths whose
/// intermediate nodes all rank below `target` and whose start ranks above
/// it. Paths with probability <= theta are dropped. Result is sorted by
/// source rank (highest first).
std::vector<ReachProbability> influence_reach_prob(const Graph& graph, const Ranking& ranking,
                                                   NodeId target, std::size_t max_hops,
                                                   double theta);

struct LfaOptions {
  std::size_t depth = 1;  // l: longest influence path in hops
  double theta = 0.0;     // drop paths with probability <= theta
};

/// LFA with p(·, v) replaced by influence-path reach probabilities.
/// depth = 1 with theta = 0 reproduces lfa_scores bit for bit.
MarginalScores generalized_lfa_scores(const Graph& graph, const Ranking& ranking,
                                      const LfaOptions& options);

enum class StopReason { kRankingFixpoint, kTopKStable, kMaxIterations };

std::string to_string(StopReason reason);

struct ConvergenceReport {
  std::size_t k = 0;
  std::size_t iterations = 0;
  /// Fraction of the new top-k set absent from the previous top-k set.
  std::vector<double> top_k_changed;
  /// Σ of the scores of the top-k nodes of the ranking scored in that
  /// iteration (its estimated I(k)).
  std::vector<double> spread_of_top_k;
  bool converged = false;
  StopReason stop_reason = StopReason::kMaxIterations;
};

nlohmann::json to_json(const ConvergenceReport& report);

/// Scores all nodes for a ranking; LFA variants or an exact/MC oracle.
using Scorer = std::function<std::vector<double>(const Graph&, const Ranking&)>;

Scorer lfa_scorer(const LfaOptions& options);

struct IMRankOptions {
  std::size_t k = 50;
  std::size_t max_iterations = 10;
  /// Stop as soon as two successive top-k sets agree.
  bool stop_on_top_k_stable = true;
  /// Called with (iteration, ranking scored, scores) each round.
  std::function<void(std::size_t, const Ranking&, std::span<const double>)> observer;
};

struct IMRankResult {
  Ranking ranking;
  ConvergenceReport report;
};

/// Throws std::invalid_argument when k > n, max_iterations == 0 or the
/// initial ranking does not match the graph.
IMRankResult imrank_iterate(const Graph& graph, const Ranking& initial, const Scorer& scorer,
                            const IMRankOptions& options);
IMRankResult imrank_iterate(const Graph& graph, const Ranking& initial, const LfaOptions& lfa,
                            const IMRankOptions& options);

struct ConsistencyCheck {
  bool consistent = true;
  /// First (i, j), 1-based ranks with i < j, where M_r(r_i) < M_r(r_j) - slack.
  std::optional<std::pair<std::size_t, std::size_t>> violation;
  std::vector<double> marginals;  // in rank order
};

/// Evaluates the true ranking-based marginals with `evaluator` and checks
/// they are nonincreasing within `slack`.
ConsistencyCheck is_self_consistent(const Graph& graph, const Ranking& ranking,
                                    const Evaluator& evaluator, double slack);

}  // namespace imrank

#endif  // IMRANK_IMRANK_HPP_
