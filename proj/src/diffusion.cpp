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

#include "imrank/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "imrank/parallel.hpp"

namespace imrank {
namespace {

/// Visit marks with an epoch counter so a reset is O(1).
struct Scratch {
  std::vector<std::uint32_t> mark;
  std::uint32_t epoch = 0;
  std::vector<NodeId> queue;

  void reset(std::size_t n) {
    if (mark.size() != n) {
      mark.assign(n, 0);
      epoch = 0;
    }
    if (++epoch == 0) {
      std::fill(mark.begin(), mark.end(), 0);
      epoch = 1;
    }
    queue.clear();
  }
  bool seen(NodeId v) const { return mark[v] == epoch; }
  void visit(NodeId v) {
    mark[v] = epoch;
    queue.push_back(v);
  }
};

thread_local Scratch tls_scratch;

inline bool mc_live(std::uint64_t tseed, ArcId arc, double p) {
  if (p >= 1.0) return true;
  if (p <= 0.0) return false;
  return to_unit(mix64(tseed, arc)) < p;
}

/// BFS from queue[head..]; `live(arc)` decides arcs, `blocked(v)` excludes
/// nodes (treated as already active elsewhere).
template <class Live, class Blocked>
void propagate(const Graph& g, Scratch& s, std::size_t head, Live&& live, Blocked&& blocked) {
  while (head < s.queue.size()) {
    const NodeId u = s.queue[head++];
    for (const Neighbor& nb : g.out_neighbors(u)) {
      if (s.seen(nb.node) || blocked(nb.node)) continue;
      if (live(nb.arc)) s.visit(nb.node);
    }
  }
}

constexpr auto kNothingBlocked = [](NodeId) { return false; };

/// Calls visit(weight, live_flags) for each of the 2^m live-edge worlds.
template <class Visit>
void for_each_world(const Graph& g, Visit&& visit) {
  std::vector<ArcId> uncertain;
  std::vector<char> live(g.arc_count(), 0);
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    const double p = g.probability(a);
    if (p >= 1.0) live[a] = 1;
    else if (p > 0.0) uncertain.push_back(a);
  }
  if (uncertain.size() > kMaxExactArcs)
    throw std::domain_error("exact evaluation limited to " + std::to_string(kMaxExactArcs) +
                            " uncertain arcs, graph has " + std::to_string(uncertain.size()));
  auto recurse = [&](auto&& self, std::size_t k, double weight) -> void {
    if (k == uncertain.size()) {
      visit(weight, static_cast<const std::vector<char>&>(live));
      return;
    }
    const ArcId a = uncertain[k];
    const double p = g.probability(a);
    live[a] = 1;
    self(self, k + 1, weight * p);
    live[a] = 0;
    self(self, k + 1, weight * (1.0 - p));
  };
  recurse(recurse, 0, 1.0);
}

}  // namespace

void validate_seeds(const Graph& graph, std::span<const NodeId> seeds) {
  std::vector<char> present(graph.node_count(), 0);
  for (NodeId v : seeds) {
    if (!graph.valid_node(v))
      throw std::out_of_range("seed id " + std::to_string(v) + " out of range (n=" +
                              std::to_string(graph.node_count()) + ")");
    if (present[v]) throw std::invalid_argument("duplicate seed id " + std::to_string(v));
    present[v] = 1;
  }
}

std::vector<NodeId> simulate_cascade(const Graph& graph, std::span<const NodeId> seeds,
                                     std::uint64_t tseed) {
  validate_seeds(graph, seeds);
  Scratch& s = tls_scratch;
  s.reset(graph.node_count());
  SeedSet sorted(seeds.begin(), seeds.end());
  std::sort(sorted.begin(), sorted.end());
  for (NodeId v : sorted) s.visit(v);
  propagate(
      graph, s, 0, [&](ArcId a) { return mc_live(tseed, a, graph.probability(a)); },
      kNothingBlocked);
  std::vector<NodeId> active = s.queue;
  std::sort(active.begin(), active.end());
  return active;
}

SpreadEstimate estimate_spread(const Graph& graph, std::span<const NodeId> seeds,
                               const MonteCarlo& config) {
  if (config.trials == 0) throw std::invalid_argument("trials must be positive");
  validate_seeds(graph, seeds);
  SeedSet sorted(seeds.begin(), seeds.end());
  std::sort(sorted.begin(), sorted.end());

  const unsigned threads = detail::resolve_threads(config.threads, config.trials);
  std::vector<std::uint64_t> sums(threads, 0);
  std::vector<unsigned __int128> squares(threads, 0);
  detail::for_chunks(config.trials, threads, [&](std::size_t c, std::size_t begin, std::size_t end) {
    Scratch& s = tls_scratch;
    for (std::size_t t = begin; t < end; ++t) {
      const std::uint64_t tseed = trial_seed(config.base_seed, t);
      s.reset(graph.node_count());
      for (NodeId v : sorted) s.visit(v);
      propagate(
          graph, s, 0, [&](ArcId a) { return mc_live(tseed, a, graph.probability(a)); },
          kNothingBlocked);
      const std::uint64_t count = s.queue.size();
      sums[c] += count;
      squares[c] += static_cast<unsigned __int128>(count) * count;
    }
  });
  std::uint64_t sum = 0;
  unsigned __int128 sumsq = 0;
  for (unsigned c = 0; c < threads; ++c) {
    sum += sums[c];
    sumsq += squares[c];
  }

  SpreadEstimate est;
  est.trials = config.trials;
  est.base_seed = config.base_seed;
  const auto trials = static_cast<long double>(config.trials);
  est.mean = static_cast<double>(static_cast<long double>(sum) / trials);
  if (config.trials > 1) {
    // T·Σx² − (Σx)² is an exact nonnegative integer.
    const unsigned __int128 numer =
        static_cast<unsigned __int128>(config.trials) * sumsq -
        static_cast<unsigned __int128>(sum) * sum;
    const long double variance = static_cast<long double>(numer) / (trials * (trials - 1));
    est.std_error = static_cast<double>(std::sqrt(variance / trials));
  }
  return est;
}

SpreadEstimate estimate_spread(const Graph& graph, std::span<const NodeId> seeds,
                               std::uint64_t trials, std::uint64_t base_seed) {
  return estimate_spread(graph, seeds, MonteCarlo{trials, base_seed, 0});
}

std::size_t uncertain_arc_count(const Graph& graph) {
  std::size_t m = 0;
  for (const Arc& a : graph.arcs()) m += (a.probability > 0.0 && a.probability < 1.0);
  return m;
}

double exact_spread(const Graph& graph, std::span<const NodeId> seeds) {
  validate_seeds(graph, seeds);
  if (seeds.empty()) return 0.0;
  double total = 0.0;
  Scratch s;
  for_each_world(graph, [&](double weight, const std::vector<char>& live) {
    s.reset(graph.node_count());
    for (NodeId v : seeds) s.visit(v);
    propagate(graph, s, 0, [&](ArcId a) { return live[a] != 0; }, kNothingBlocked);
    total += weight * static_cast<double>(s.queue.size());
  });
  return total;
}

double spread(const Graph& graph, std::span<const NodeId> seeds, const Evaluator& evaluator) {
  if (std::holds_alternative<Exact>(evaluator)) return exact_spread(graph, seeds);
  return estimate_spread(graph, seeds, std::get<MonteCarlo>(evaluator)).mean;
}

std::vector<double> prefix_marginals(const Graph& graph, std::span<const NodeId> order,
                                     const Evaluator& evaluator) {
  validate_seeds(graph, order);
  const std::size_t len = order.size();
  std::vector<double> marginals(len, 0.0);
  if (len == 0) return marginals;

  if (std::holds_alternative<Exact>(evaluator)) {
    Scratch s;
    for_each_world(graph, [&](double weight, const std::vector<char>& live) {
      s.reset(graph.node_count());
      for (std::size_t i = 0; i < len; ++i) {
        if (s.seen(order[i])) continue;
        const std::size_t before = s.queue.size();
        s.visit(order[i]);
        propagate(graph, s, before, [&](ArcId a) { return live[a] != 0; }, kNothingBlocked);
        marginals[i] += weight * static_cast<double>(s.queue.size() - before);
      }
    });
    return marginals;
  }

  const MonteCarlo& mc = std::get<MonteCarlo>(evaluator);
  if (mc.trials == 0) throw std::invalid_argument("trials must be positive");
  const unsigned threads = detail::resolve_threads(mc.threads, mc.trials);
  std::vector<std::vector<std::uint64_t>> deltas(threads, std::vector<std::uint64_t>(len, 0));
  detail::for_chunks(mc.trials, threads, [&](std::size_t c, std::size_t begin, std::size_t end) {
    Scratch& s = tls_scratch;
    auto& acc = deltas[c];
    for (std::size_t t = begin; t < end; ++t) {
      const std::uint64_t tseed = trial_seed(mc.base_seed, t);
      s.reset(graph.node_count());
      for (std::size_t i = 0; i < len; ++i) {
        if (s.seen(order[i])) continue;
        const std::size_t before = s.queue.size();
        s.visit(order[i]);
        propagate(
            graph, s, before, [&](ArcId a) { return mc_live(tseed, a, graph.probability(a)); },
            kNothingBlocked);
        acc[i] += s.queue.size() - before;
      }
    }
  });
  for (std::size_t i = 0; i < len; ++i) {
    std::uint64_t total = 0;
    for (unsigned c = 0; c < threads; ++c) total += deltas[c][i];
    marginals[i] = static_cast<double>(total) / static_cast<double>(mc.trials);
  }
  return marginals;
}

double marginal_spread(const Graph& graph, std::span<const NodeId> base, NodeId v,
                       const Evaluator& evaluator) {
  if (!graph.valid_node(v))
    throw std::out_of_range("node id " + std::to_string(v) + " out of range");
  validate_seeds(graph, base);
  if (std::find(base.begin(), base.end(), v) != base.end()) return 0.0;
  SeedSet order(base.begin(), base.end());
  order.push_back(v);
  if (std::holds_alternative<Exact>(evaluator)) {
    // Two full evaluations so exact mode stays a literal set difference.
    return exact_spread(graph, order) - exact_spread(graph, base);
  }
  return prefix_marginals(graph, order, evaluator).back();
}

MonteCarloWorlds::MonteCarloWorlds(const Graph& graph, const MonteCarlo& config)
    : graph_(&graph), config_(config), words_((graph.node_count() + 63) / 64) {
  if (config.trials == 0) throw std::invalid_argument("trials must be positive");
  reached_.assign(config.trials * words_, 0);
}

std::uint64_t MonteCarloWorlds::reach_from(NodeId v, std::size_t trial, bool commit) const {
  std::uint64_t* row = reached_.data() + trial * words_;
  auto reached = [row](NodeId x) { return (row[x >> 6] >> (x & 63)) & 1u; };
  if (reached(v)) return 0;
  const Graph& g = *graph_;
  const std::uint64_t tseed = trial_seed(config_.base_seed, trial);
  Scratch& s = tls_scratch;
  s.reset(g.node_count());
  s.visit(v);
  propagate(
      g, s, 0, [&](ArcId a) { return mc_live(tseed, a, g.probability(a)); },
      [&](NodeId x) { return reached(x) != 0; });
  if (commit) {
    for (NodeId x : s.queue) row[x >> 6] |= std::uint64_t{1} << (x & 63);
  }
  return s.queue.size();
}

double MonteCarloWorlds::gain(NodeId v) const {
  if (!graph_->valid_node(v)) throw std::out_of_range("node id out of range");
  const unsigned threads = detail::resolve_threads(config_.threads, config_.trials);
  std::vector<std::uint64_t> sums(threads, 0);
  detail::for_chunks(config_.trials, threads, [&](std::size_t c, std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) sums[c] += reach_from(v, t, false);
  });
  std::uint64_t total = 0;
  for (auto x : sums) total += x;
  return static_cast<double>(total) / static_cast<double>(config_.trials);
}

double MonteCarloWorlds::add(NodeId v) {
  if (!graph_->valid_node(v)) throw std::out_of_range("node id out of range");
  if (std::find(seeds_.begin(), seeds_.end(), v) != seeds_.end())
    throw std::invalid_argument("node already a seed");
  const unsigned threads = detail::resolve_threads(config_.threads, config_.trials);
  std::vector<std::uint64_t> sums(threads, 0);
  detail::for_chunks(config_.trials, threads, [&](std::size_t c, std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) sums[c] += reach_from(v, t, true);
  });
  std::uint64_t added = 0;
  for (auto x : sums) added += x;
  total_ += added;
  seeds_.push_back(v);
  return static_cast<double>(added) / static_cast<double>(config_.trials);
}

double MonteCarloWorlds::spread() const {
  return static_cast<double>(total_) / static_cast<double>(config_.trials);
}

}  // namespace imrank
