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

#ifndef IMRANK_RANKING_HPP_
#define IMRANK_RANKING_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "imrank/graph.hpp"

namespace imrank {

/// Permutation of node ids with its inverse. order()[i] is the node at rank
/// i + 1; rank_of(v) is 1-based.
class Ranking {
 public:
  Ranking() = default;

  /// Throws std::invalid_argument unless `order` is a permutation of 0..n-1.
  static Ranking from_order(std::vector<NodeId> order);
  static Ranking identity(std::size_t n);

  std::size_t size() const noexcept { return order_.size(); }
  std::span<const NodeId> order() const noexcept { return order_; }
  NodeId at(std::size_t position) const { return order_[position]; }
  std::size_t rank_of(NodeId v) const { return rank_of_[v]; }
  std::span<const NodeId> top(std::size_t k) const { return std::span(order_).first(k); }

  friend bool operator==(const Ranking& a, const Ranking& b) { return a.order_ == b.order_; }

 private:
  std::vector<NodeId> order_;
  std::vector<std::size_t> rank_of_;
};

/// Orders nodes by `score` descending; equal scores keep the order of
/// `tie_break` (ascending rank). Used by every ranker and by IMRank's re-sort.
Ranking sort_by_score(std::span<const double> score, const Ranking& tie_break);

Ranking rank_random(const Graph& graph, std::uint64_t seed);
Ranking rank_degree(const Graph& graph);
Ranking rank_inversed_degree(const Graph& graph);
Ranking rank_strength(const Graph& graph);

struct PageRankOptions {
  double teleport = 0.15;
  double tolerance = 1e-10;
  std::size_t max_iterations = 100;
};

/// Uniform random-surfer scores (follow probability 1 - teleport, dangling
/// mass spread uniformly).
std::vector<double> pagerank_scores(const Graph& graph, const PageRankOptions& options = {});
Ranking rank_pagerank(const Graph& graph, const PageRankOptions& options = {});

/// One node label per line, top rank first.
std::string write_ranking(const Graph& graph, std::span<const NodeId> order);
/// Reads labels one per line (blank lines and '#' comments skipped). Throws
/// std::invalid_argument on unknown or repeated labels.
std::vector<NodeId> read_node_list(const Graph& graph, std::istream& in);

}  // namespace imrank

#endif  // IMRANK_RANKING_HPP_
