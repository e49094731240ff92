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

#include "imrank/imrank.hpp"

#include <algorithm>
#include <stdexcept>

namespace imrank {
namespace {

void check_ranking(const Graph& graph, const Ranking& ranking) {
  if (ranking.size() != graph.node_count())
    throw std::invalid_argument("ranking has " + std::to_string(ranking.size()) +
                                " nodes, graph has " + std::to_string(graph.node_count()));
}

/// Moves score from `v` to each source in turn; `sources` is in ascending
/// rank order.
void allocate(std::vector<double>& score, NodeId v, std::span<const ReachProbability> sources) {
  for (const ReachProbability& s : sources) {
    score[s.source] += score[v] * s.rho;
    score[v] *= 1.0 - s.rho;
  }
}

struct PathSearch {
  const Graph& graph;
  const Ranking& ranking;
  std::size_t target_rank;
  std::size_t max_hops;
  double theta;
  std::vector<char> on_path;
  std::vector<ReachProbability> found;  // one entry per source, unsorted
  std::vector<std::size_t> slot;        // node -> index in found, or npos

  void walk(NodeId node, double prob, std::size_t hops) {
    for (const Neighbor& nb : graph.in_neighbors(node)) {
      const NodeId u = nb.node;
      if (on_path[u]) continue;
      const double q = prob * graph.probability(nb.arc);
      if (q <= theta) continue;
      if (ranking.rank_of(u) < target_rank) {
        if (slot[u] == kNone) {
          slot[u] = found.size();
          found.push_back({u, 0.0});
        }
        double& rho = found[slot[u]].rho;
        rho = rho + q - rho * q;
      } else if (hops + 1 < max_hops) {
        on_path[u] = 1;
        walk(u, q, hops + 1);
        on_path[u] = 0;
      }
    }
  }

  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
};

}  // namespace

MarginalScores lfa_scores(const Graph& graph, const Ranking& ranking) {
  check_ranking(graph, ranking);
  const std::size_t n = graph.node_count();
  std::vector<double> score(n, 1.0);
  std::vector<ReachProbability> sources;
  for (std::size_t i = n; i-- > 1;) {
    const NodeId v = ranking.at(i);
    sources.clear();
    for (const Neighbor& nb : graph.in_neighbors(v)) {
      if (ranking.rank_of(nb.node) < i + 1) sources.push_back({nb.node, graph.probability(nb.arc)});
    }
    std::sort(sources.begin(), sources.end(), [&](const auto& a, const auto& b) {
      return ranking.rank_of(a.source) < ranking.rank_of(b.source);
    });
    allocate(score, v, sources);
  }
  return {std::move(score), ranking};
}

std::vector<ReachProbability> influence_reach_prob(const Graph& graph, const Ranking& ranking,
                                                   NodeId target, std::size_t max_hops,
                                                   double theta) {
  check_ranking(graph, ranking);
  if (!graph.valid_node(target))
    throw std::out_of_range("target id " + std::to_string(target) + " out of range");
  if (max_hops == 0) throw std::invalid_argument("path depth l must be at least 1");
  if (!(theta >= 0.0 && theta < 1.0)) throw std::invalid_argument("theta must be in [0,1)");
  PathSearch search{graph, ranking, ranking.rank_of(target), max_hops, theta,
                    std::vector<char>(graph.node_count(), 0), {},
                    std::vector<std::size_t>(graph.node_count(), PathSearch::kNone)};
  search.on_path[target] = 1;
  search.walk(target, 1.0, 0);
  std::vector<ReachProbability> out = std::move(search.found);
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    return ranking.rank_of(a.source) < ranking.rank_of(b.source);
  });
  return out;
}

MarginalScores generalized_lfa_scores(const Graph& graph, const Ranking& ranking,
                                      const LfaOptions& options) {
  check_ranking(graph, ranking);
  if (options.depth == 0) throw std::invalid_argument("path depth l must be at least 1");
  if (!(options.theta >= 0.0 && options.theta < 1.0))
    throw std::invalid_argument("theta must be in [0,1)");
  const std::size_t n = graph.node_count();
  std::vector<double> score(n, 1.0);
  for (std::size_t i = n; i-- > 1;) {
    const NodeId v = ranking.at(i);
    const auto sources = influence_reach_prob(graph, ranking, v, options.depth, options.theta);
    allocate(score, v, sources);
  }
  return {std::move(score), ranking};
}

std::string to_string(StopReason reason) {
  switch (reason) {
    case StopReason::kRankingFixpoint: return "ranking-fixpoint";
    case StopReason::kTopKStable: return "top-k-stable";
    case StopReason::kMaxIterations: return "max-iterations";
  }
  return "unknown";
}

nlohmann::json to_json(const ConvergenceReport& report) {
  return {{"k", report.k},
          {"iterations", report.iterations},
          {"converged", report.converged},
          {"stop_reason", to_string(report.stop_reason)},
          {"top_k_changed", report.top_k_changed},
          {"spread_of_top_k", report.spread_of_top_k}};
}

Scorer lfa_scorer(const LfaOptions& options) {
  if (options.depth == 1 && options.theta == 0.0) {
    return [](const Graph& g, const Ranking& r) { return lfa_scores(g, r).scores; };
  }
  return [options](const Graph& g, const Ranking& r) {
    return generalized_lfa_scores(g, r, options).scores;
  };
}

IMRankResult imrank_iterate(const Graph& graph, const Ranking& initial, const Scorer& scorer,
                            const IMRankOptions& options) {
  check_ranking(graph, initial);
  const std::size_t n = graph.node_count();
  if (options.k > n)
    throw std::invalid_argument("k = " + std::to_string(options.k) + " exceeds node count " +
                                std::to_string(n));
  if (options.max_iterations == 0) throw std::invalid_argument("max_iterations must be positive");

  ConvergenceReport report;
  report.k = options.k;
  Ranking current = initial;
  std::vector<char> in_top(n, 0);
  for (std::size_t t = 1; t <= options.max_iterations; ++t) {
    const std::vector<double> scores = scorer(graph, current);
    if (scores.size() != n) throw std::logic_error("scorer returned wrong number of scores");
    if (options.observer) options.observer(t, current, scores);

    double top_sum = 0.0;
    std::fill(in_top.begin(), in_top.end(), 0);
    for (NodeId v : current.top(options.k)) {
      top_sum += scores[v];
      in_top[v] = 1;
    }
    Ranking next = sort_by_score(scores, current);
    std::size_t entered = 0;
    for (NodeId v : next.top(options.k)) entered += !in_top[v];
    const double changed =
        options.k == 0 ? 0.0 : static_cast<double>(entered) / static_cast<double>(options.k);

    report.iterations = t;
    report.top_k_changed.push_back(changed);
    report.spread_of_top_k.push_back(top_sum);

    const bool fixpoint = next == current;
    current = std::move(next);
    if (fixpoint) {
      report.converged = true;
      report.stop_reason = StopReason::kRankingFixpoint;
      break;
    }
    if (options.stop_on_top_k_stable && entered == 0) {
      report.converged = true;
      report.stop_reason = StopReason::kTopKStable;
      break;
    }
  }
  return {std::move(current), std::move(report)};
}

IMRankResult imrank_iterate(const Graph& graph, const Ranking& initial, const LfaOptions& lfa,
                            const IMRankOptions& options) {
  if (lfa.depth == 0) throw std::invalid_argument("path depth l must be at least 1");
  return imrank_iterate(graph, initial, lfa_scorer(lfa), options);
}

ConsistencyCheck is_self_consistent(const Graph& graph, const Ranking& ranking,
                                    const Evaluator& evaluator, double slack) {
  check_ranking(graph, ranking);
  if (slack < 0.0) throw std::invalid_argument("slack must be nonnegative");
  ConsistencyCheck check;
  check.marginals = prefix_marginals(graph, ranking.order(), evaluator);
  const auto& m = check.marginals;
  double prefix_min = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (prefix_min < m[j] - slack) {
      std::size_t i = 0;
      while (!(m[i] < m[j] - slack)) ++i;
      check.consistent = false;
      check.violation = std::make_pair(i + 1, j + 1);
      break;
    }
    prefix_min = std::min(prefix_min, m[j]);
  }
  return check;
}

}  // namespace imrank
