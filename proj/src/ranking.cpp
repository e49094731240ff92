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

#include "imrank/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <stdexcept>

#include "imrank/rng.hpp"

namespace imrank {

Ranking Ranking::from_order(std::vector<NodeId> order) {
  Ranking r;
  r.rank_of_.assign(order.size(), 0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const NodeId v = order[i];
    if (v >= order.size() || r.rank_of_[v] != 0)
      throw std::invalid_argument("ranking is not a permutation of 0..n-1");
    r.rank_of_[v] = i + 1;
  }
  r.order_ = std::move(order);
  return r;
}

Ranking Ranking::identity(std::size_t n) {
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  return from_order(std::move(order));
}

Ranking sort_by_score(std::span<const double> score, const Ranking& tie_break) {
  if (score.size() != tie_break.size())
    throw std::invalid_argument("score vector size does not match ranking");
  std::vector<NodeId> order(tie_break.order().begin(), tie_break.order().end());
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return score[a] > score[b]; });
  return Ranking::from_order(std::move(order));
}

Ranking rank_random(const Graph& graph, std::uint64_t seed) {
  std::vector<NodeId> order(graph.node_count());
  std::iota(order.begin(), order.end(), NodeId{0});
  SplitMix64 rng(seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    const std::size_t j = rng.below(i);
    std::swap(order[i - 1], order[j]);
  }
  return Ranking::from_order(std::move(order));
}

Ranking rank_degree(const Graph& graph) {
  std::vector<double> degree(graph.node_count());
  for (NodeId v = 0; v < graph.node_count(); ++v) degree[v] = static_cast<double>(graph.out_degree(v));
  return sort_by_score(degree, Ranking::identity(graph.node_count()));
}

Ranking rank_inversed_degree(const Graph& graph) {
  std::vector<double> degree(graph.node_count());
  for (NodeId v = 0; v < graph.node_count(); ++v) degree[v] = -static_cast<double>(graph.out_degree(v));
  return sort_by_score(degree, Ranking::identity(graph.node_count()));
}

Ranking rank_strength(const Graph& graph) {
  std::vector<double> strength(graph.node_count(), 0.0);
  for (NodeId v = 0; v < graph.node_count(); ++v) {
    for (const Neighbor& nb : graph.out_neighbors(v)) strength[v] += graph.probability(nb.arc);
  }
  return sort_by_score(strength, Ranking::identity(graph.node_count()));
}

std::vector<double> pagerank_scores(const Graph& graph, const PageRankOptions& options) {
  const std::size_t n = graph.node_count();
  if (n == 0) return {};
  const double uniform = 1.0 / static_cast<double>(n);
  const double follow = 1.0 - options.teleport;
  std::vector<double> score(n, uniform), next(n);
  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    double dangling = 0.0;
    for (NodeId v = 0; v < n; ++v) {
      if (graph.out_degree(v) == 0) dangling += score[v];
    }
    const double base = (options.teleport + follow * dangling) * uniform;
    std::fill(next.begin(), next.end(), base);
    for (NodeId v = 0; v < n; ++v) {
      const std::size_t d = graph.out_degree(v);
      if (d == 0) continue;
      const double share = follow * score[v] / static_cast<double>(d);
      for (const Neighbor& nb : graph.out_neighbors(v)) next[nb.node] += share;
    }
    double change = 0.0;
    for (NodeId v = 0; v < n; ++v) change += std::abs(next[v] - score[v]);
    score.swap(next);
    if (change <= options.tolerance) break;
  }
  return score;
}

Ranking rank_pagerank(const Graph& graph, const PageRankOptions& options) {
  const auto score = pagerank_scores(graph, options);
  return sort_by_score(score, Ranking::identity(graph.node_count()));
}

std::string write_ranking(const Graph& graph, std::span<const NodeId> order) {
  std::string out;
  for (NodeId v : order) {
    out += graph.label(v);
    out += '\n';
  }
  return out;
}

std::vector<NodeId> read_node_list(const Graph& graph, std::istream& in) {
  std::vector<NodeId> nodes;
  std::vector<char> seen(graph.node_count(), 0);
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string label = line.substr(first, last - first + 1);
    const auto id = graph.find(label);
    if (!id) throw std::invalid_argument("unknown node label '" + label + "'");
    if (seen[*id]) throw std::invalid_argument("repeated node label '" + label + "'");
    seen[*id] = 1;
    nodes.push_back(*id);
  }
  return nodes;
}

}  // namespace imrank
