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

#include "imrank/greedy.hpp"

#include <optional>
#include <queue>
#include <stdexcept>
#include <string>

namespace imrank {
namespace {

/// Marginal gains against a growing seed set.
class GainOracle {
 public:
  GainOracle(const Graph& graph, const Evaluator& evaluator) : graph_(graph) {
    if (const auto* mc = std::get_if<MonteCarlo>(&evaluator)) {
      worlds_.emplace(graph, *mc);
    } else if (uncertain_arc_count(graph) > kMaxExactArcs) {
      throw std::domain_error("exact evaluator limited to " + std::to_string(kMaxExactArcs) +
                              " uncertain arcs");
    }
  }

  double gain(NodeId v) {
    ++evaluations_;
    if (worlds_) return worlds_->gain(v);
    seeds_.push_back(v);
    const double with_v = exact_spread(graph_, seeds_);
    seeds_.pop_back();
    return with_v - base_;
  }

  void add(NodeId v) {
    seeds_.push_back(v);
    if (worlds_) worlds_->add(v);
    else base_ = exact_spread(graph_, seeds_);
  }

  std::size_t evaluations() const noexcept { return evaluations_; }

 private:
  const Graph& graph_;
  std::optional<MonteCarloWorlds> worlds_;
  SeedSet seeds_;
  double base_ = 0.0;
  std::size_t evaluations_ = 0;
};

void check_k(const Graph& graph, std::size_t k) {
  if (k > graph.node_count())
    throw std::invalid_argument("k = " + std::to_string(k) + " exceeds node count " +
                                std::to_string(graph.node_count()));
}

struct Entry {
  double gain;
  NodeId node;
  std::size_t round;  // seed-set size the gain was computed against
};

struct EntryLess {
  bool operator()(const Entry& a, const Entry& b) const {
    if (a.gain != b.gain) return a.gain < b.gain;
    return a.node > b.node;
  }
};

}  // namespace

GreedyTrace greedy_celf(const Graph& graph, std::size_t k, const Evaluator& evaluator) {
  check_k(graph, k);
  GreedyTrace trace;
  if (k == 0) return trace;
  GainOracle oracle(graph, evaluator);
  std::priority_queue<Entry, std::vector<Entry>, EntryLess> queue;
  for (NodeId v = 0; v < graph.node_count(); ++v) queue.push({oracle.gain(v), v, 0});

  while (trace.seeds_in_order.size() < k) {
    Entry top = queue.top();
    queue.pop();
    if (top.round == trace.seeds_in_order.size()) {
      oracle.add(top.node);
      trace.seeds_in_order.push_back(top.node);
      trace.marginal_gains.push_back(top.gain);
      continue;
    }
    top.gain = oracle.gain(top.node);
    top.round = trace.seeds_in_order.size();
    queue.push(top);
  }
  trace.evaluations = oracle.evaluations();
  return trace;
}

GreedyTrace greedy_naive(const Graph& graph, std::size_t k, const Evaluator& evaluator) {
  check_k(graph, k);
  GreedyTrace trace;
  if (k == 0) return trace;
  GainOracle oracle(graph, evaluator);
  std::vector<char> chosen(graph.node_count(), 0);
  while (trace.seeds_in_order.size() < k) {
    std::optional<Entry> best;
    for (NodeId v = 0; v < graph.node_count(); ++v) {
      if (chosen[v]) continue;
      const double g = oracle.gain(v);
      if (!best || g > best->gain) best = Entry{g, v, 0};
    }
    chosen[best->node] = 1;
    oracle.add(best->node);
    trace.seeds_in_order.push_back(best->node);
    trace.marginal_gains.push_back(best->gain);
  }
  trace.evaluations = oracle.evaluations();
  return trace;
}

nlohmann::json to_json(const GreedyTrace& trace) {
  return {{"seeds_in_order", trace.seeds_in_order},
          {"marginal_gains", trace.marginal_gains},
          {"evaluations", trace.evaluations}};
}

}  // namespace imrank
