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

#ifndef IMRANK_GREEDY_HPP_
#define IMRANK_GREEDY_HPP_

#include <cstddef>
#include <vector>

#include <json.hpp>

#include "imrank/diffusion.hpp"
#include "imrank/graph.hpp"

namespace imrank {

struct GreedyTrace {
  SeedSet seeds_in_order;
  std::vector<double> marginal_gains;
  /// Number of marginal-gain evaluations performed.
  std::size_t evaluations = 0;
};

/// Greedy seed selection with CELF lazy re-evaluation. Ties go to the
/// smaller node id. Throws std::invalid_argument when k > n and
/// std::domain_error when an exact evaluator exceeds its cap.
GreedyTrace greedy_celf(const Graph& graph, std::size_t k, const Evaluator& evaluator);

/// Plain greedy: every round re-evaluates every remaining node. Reference
/// for CELF; same tie rule.
GreedyTrace greedy_naive(const Graph& graph, std::size_t k, const Evaluator& evaluator);

nlohmann::json to_json(const GreedyTrace& trace);

}  // namespace imrank

#endif  // IMRANK_GREEDY_HPP_
