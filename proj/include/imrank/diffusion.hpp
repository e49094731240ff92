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

// Independent cascade evaluation: single realizations, Monte-Carlo spread
// estimation, exact live-edge enumeration and marginal spread.
//
// A Monte-Carlo trial is a live-edge world: arc `a` is live in trial `t`
// iff to_unit(mix64(trial_seed(base, t), a)) < p(a). A cascade only ever
// tests arcs leaving newly activated nodes, so this is the usual IC process,
// but any two seed sets evaluated under the same base seed see the same
// world. Marginals computed this way are nonnegative per trial.

#ifndef IMRANK_DIFFUSION_HPP_
#define IMRANK_DIFFUSION_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "imrank/graph.hpp"
#include "imrank/rng.hpp"

namespace imrank {

using SeedSet = std::vector<NodeId>;

struct SpreadEstimate {
  double mean = 0.0;
  std::uint64_t trials = 0;
  double std_error = 0.0;
  std::uint64_t base_seed = 0;
};

struct MonteCarlo {
  std::uint64_t trials = 10000;
  std::uint64_t base_seed = 0;
  /// 0 means hardware concurrency. Results do not depend on this value.
  unsigned threads = 0;
};

struct Exact {};

using Evaluator = std::variant<Exact, MonteCarlo>;

/// Exact evaluation enumerates 2^m live-edge worlds where m counts arcs with
/// 0 < p < 1 (arcs with p = 0 or 1 are deterministic).
inline constexpr std::size_t kMaxExactArcs = 25;

/// Seed of Monte-Carlo trial `trial`; a pure function of its arguments.
inline std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial) {
  return mix64(base_seed, trial);
}

/// Throws std::out_of_range for bad ids, std::invalid_argument for
/// duplicates.
void validate_seeds(const Graph& graph, std::span<const NodeId> seeds);

/// Activated node ids (ascending) of one IC realization.
std::vector<NodeId> simulate_cascade(const Graph& graph, std::span<const NodeId> seeds,
                                     std::uint64_t trial_seed);

SpreadEstimate estimate_spread(const Graph& graph, std::span<const NodeId> seeds,
                               const MonteCarlo& config);
SpreadEstimate estimate_spread(const Graph& graph, std::span<const NodeId> seeds,
                               std::uint64_t trials, std::uint64_t base_seed);

/// Number of arcs that exact enumeration branches on.
std::size_t uncertain_arc_count(const Graph& graph);

/// Exact I(S). Throws std::domain_error when uncertain arcs exceed the cap.
double exact_spread(const Graph& graph, std::span<const NodeId> seeds);

double spread(const Graph& graph, std::span<const NodeId> seeds, const Evaluator& evaluator);

/// I(base ∪ {v}) − I(base); Monte-Carlo mode pairs both evaluations on the
/// same worlds.
double marginal_spread(const Graph& graph, std::span<const NodeId> base, NodeId v,
                       const Evaluator& evaluator);

/// Telescoped marginals along `order`: entry i is
/// I({order[0..i]}) − I({order[0..i-1]}). One pass over the worlds.
std::vector<double> prefix_marginals(const Graph& graph, std::span<const NodeId> order,
                                     const Evaluator& evaluator);

/// Incremental Monte-Carlo state for greedy selection: keeps, per trial, the
/// set reached by the current seeds so a candidate's gain is one blocked
/// search per trial.
class MonteCarloWorlds {
 public:
  MonteCarloWorlds(const Graph& graph, const MonteCarlo& config);

  /// Average number of nodes `v` would add to the current reached sets.
  double gain(NodeId v) const;
  /// Adds `v` to the seeds and returns its realized gain.
  double add(NodeId v);
  /// Estimate of I(current seeds).
  double spread() const;
  const SeedSet& seeds() const noexcept { return seeds_; }

 private:
  std::uint64_t reach_from(NodeId v, std::size_t trial, bool commit) const;

  const Graph* graph_;
  MonteCarlo config_;
  std::size_t words_;
  mutable std::vector<std::uint64_t> reached_;  // trials × words_ bitsets
  std::uint64_t total_ = 0;
  SeedSet seeds_;
};

}  // namespace imrank

#endif  // IMRANK_DIFFUSION_HPP_
