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

// Acceptance suite. Prints one PASS/FAIL line per criterion; exits nonzero
// if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "imrank/diffusion.hpp"
#include "imrank/experiment.hpp"
#include "imrank/generators.hpp"
#include "imrank/greedy.hpp"
#include "imrank/imrank.hpp"
#include "test_support.hpp"

using namespace imrank;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

const std::vector<double> kLfaRow{1.24000, 1.42400, 0.76800, 0.92800, 0.64000};
const std::vector<double> kExactG5{1.24, 1.42912, 0.76288, 0.928, 0.64};
const std::vector<double> kMcRow{1.29846, 1.38800, 0.77941, 0.89406, 0.64007};

/// Random instance for the estimator criteria: n ≤ 50, random arc count and
/// probabilities in [0, 1).
Graph estimator_instance(std::uint64_t seed) {
  SplitMix64 rng(seed);
  const std::size_t n = 1 + rng.below(50);
  const std::size_t max_arcs = std::min<std::size_t>(n * (n - 1), 4 * n);
  const std::size_t m = max_arcs == 0 ? 0 : rng.below(max_arcs + 1);
  return assign_random(random_directed(n, m, rng.next()), 0.0, 1.0, rng.next());
}

/// Random instance inside the exact-evaluation cap.
Graph oracle_instance(std::uint64_t seed, std::size_t max_nodes, std::size_t max_arcs) {
  SplitMix64 rng(seed);
  const std::size_t n = 2 + rng.below(max_nodes - 1);
  const std::size_t m = rng.below(std::min(max_arcs, n * (n - 1)) + 1);
  return assign_random(random_directed(n, m, rng.next()), 0.0, 1.0, rng.next());
}

std::vector<double> by_node(const Ranking& r, const std::vector<double>& in_rank_order) {
  std::vector<double> out(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) out[r.at(i)] = in_rank_order[i];
  return out;
}

Outcome lfa_exactness() {
  const auto m = lfa_scores(testing::g5(), Ranking::identity(5)).scores;
  double worst = 0.0;
  for (std::size_t i = 0; i < 5; ++i) worst = std::max(worst, std::abs(m[i] - kLfaRow[i]));
  return {worst <= 1e-9, fmt("max abs error %.3g (tol 1e-9)", worst)};
}

Outcome conservation() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const Graph g = estimator_instance(seed);
    const Ranking r = rank_random(g, seed + 17);
    const double n = static_cast<double>(g.node_count());
    std::vector<std::vector<double>> all{lfa_scores(g, r).scores};
    for (std::size_t l : {1u, 2u, 3u}) all.push_back(generalized_lfa_scores(g, r, {l, 0.0}).scores);
    for (const auto& s : all) {
      const double err = std::abs(std::accumulate(s.begin(), s.end(), 0.0) - n) / std::max(n, 1.0);
      worst = std::max(worst, err);
    }
  }
  return {worst <= 1e-9, fmt("1000 instances, max |sum-n|/n %.3g (tol 1e-9)", worst)};
}

Outcome collapse() {
  std::size_t identical = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const Graph g = estimator_instance(seed + 5000);
    const Ranking r = rank_random(g, seed);
    identical += generalized_lfa_scores(g, r, {1, 0.0}).scores == lfa_scores(g, r).scores;
  }
  return {identical == 1000, fmt("%zu/1000 bit-identical", identical)};
}

Outcome oracle_fidelity() {
  const Graph g = testing::g5();
  const Ranking r = Ranking::identity(5);
  const auto exact = prefix_marginals(g, r.order(), Exact{});
  double worst = 0.0;
  for (std::size_t i = 0; i < 5; ++i) worst = std::max(worst, std::abs(exact[i] - kExactG5[i]));
  const double lfa_l1 = testing::l1(lfa_scores(g, r).scores, exact);
  const double gen_l1 = testing::l1(generalized_lfa_scores(g, r, {2, 0.0}).scores, exact);
  const bool pass = worst <= 1e-9 && lfa_l1 <= 0.011 && gen_l1 <= lfa_l1;
  return {pass, fmt("exact max err %.3g; L1(LFA) %.5f <= 0.011; L1(l=2) %.5f <= L1(LFA)", worst, lfa_l1,
                    gen_l1)};
}

Outcome mc_sanity() {
  const auto mc = prefix_marginals(testing::g5(), SeedSet{0, 1, 2, 3, 4}, MonteCarlo{20000, 2014, 0});
  int within = 0;
  std::string values;
  for (std::size_t i = 0; i < 5; ++i) {
    within += std::abs(mc[i] - kMcRow[i]) <= 0.06;
    values += fmt("%s%.4f", i ? " " : "", mc[i]);
  }
  return {within >= 4, fmt("%d/5 within 0.06 of reference MC row (need 4); ours: %s", within, values.c_str())};
}

Outcome greedy_self_consistency() {
  std::size_t ok = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Graph g = oracle_instance(seed, 8, 12);
    const auto trace = greedy_celf(g, g.node_count(), Exact{});
    ok += is_self_consistent(g, Ranking::from_order(trace.seeds_in_order), Exact{}, 1e-9).consistent;
  }
  return {ok == 200, fmt("%zu/200 greedy orders self-consistent", ok)};
}

Outcome exact_imrank_convergence() {
  std::size_t fixpoints = 0, monotone = 0, iterations = 0;
  double worst_drop = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Graph g = oracle_instance(seed + 900, 8, 12);
    const std::size_t n = g.node_count();
    Scorer exact_scorer = [](const Graph& graph, const Ranking& r) {
      return by_node(r, prefix_marginals(graph, r.order(), Exact{}));
    };
    std::vector<Ranking> visited;
    IMRankOptions options;
    options.k = n;
    options.max_iterations = 1000;
    options.stop_on_top_k_stable = false;
    options.observer = [&](std::size_t, const Ranking& r, std::span<const double>) { visited.push_back(r); };
    const auto result = imrank_iterate(g, rank_random(g, seed), exact_scorer, options);
    visited.push_back(result.ranking);
    iterations += result.report.iterations;

    const bool fixpoint = result.report.stop_reason == StopReason::kRankingFixpoint &&
                          is_self_consistent(g, result.ranking, Exact{}, 1e-9).consistent;
    fixpoints += fixpoint;
    bool nondecreasing = true;
    std::vector<double> prev;
    for (const Ranking& r : visited) {
      const auto m = prefix_marginals(g, r.order(), Exact{});
      std::vector<double> top_k(n);
      std::partial_sum(m.begin(), m.end(), top_k.begin());
      for (std::size_t k = 0; k < prev.size(); ++k) {
        worst_drop = std::max(worst_drop, prev[k] - top_k[k]);
        nondecreasing = nondecreasing && top_k[k] >= prev[k] - 1e-9;
      }
      prev = top_k;
    }
    monotone += nondecreasing;
  }
  return {fixpoints == 100 && monotone == 100,
          fmt("%zu/100 reached a self-consistent fixpoint; %zu/100 with I(k) nondecreasing for all k "
              "(largest drop %.3g, tol 1e-9, %zu iterations in total)",
              fixpoints, monotone, worst_drop, iterations)};
}

Outcome submodularity() {
  std::size_t violations = 0, checks = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    SplitMix64 rng(seed + 70000);
    const std::size_t n = 2 + rng.below(4);
    const std::size_t m = rng.below(std::min<std::size_t>(n * (n - 1), 12) + 1);
    const Graph g = assign_random(random_directed(n, m, rng.next()), 0.0, 1.0, rng.next());
    const std::uint64_t subsets = std::uint64_t{1} << n;
    std::vector<double> value(subsets);
    for (std::uint64_t s = 0; s < subsets; ++s) {
      SeedSet set;
      for (NodeId v = 0; v < n; ++v)
        if ((s >> v) & 1) set.push_back(v);
      value[s] = exact_spread(g, set);
      ++checks;
      violations += value[s] < static_cast<double>(set.size()) - 1e-9;
    }
    for (std::uint64_t t = 0; t < subsets; ++t) {
      for (std::uint64_t s = t;; s = (s - 1) & t) {
        ++checks;
        violations += value[s] > value[t] + 1e-9;
        for (NodeId v = 0; v < n; ++v) {
          const std::uint64_t bit = std::uint64_t{1} << v;
          if (t & bit) continue;
          ++checks;
          violations += value[s | bit] - value[s] < value[t | bit] - value[t] - 1e-9;
        }
        if (s == 0) break;
      }
    }
  }
  return {violations == 0, fmt("500 instances, %zu checks, %zu violations", checks, violations)};
}

Outcome desk_scale() {
  const Graph g = assign_wic(barabasi_albert(1000, 3, 2014));
  const std::size_t k = 50;
  const MonteCarlo eval{10000, 99, 0};

  const auto imr = imrank_iterate(g, rank_degree(g), LfaOptions{}, {k, 10, true, {}});
  const bool stable = imr.report.converged && imr.report.top_k_changed.back() == 0.0;
  const Ranking degree = rank_degree(g);
  const auto greedy = greedy_celf(g, k, MonteCarlo{1000, 7, 0});

  const auto s_imr = estimate_spread(g, imr.ranking.top(k), eval);
  const auto s_greedy = estimate_spread(g, greedy.seeds_in_order, eval);
  const auto s_degree = estimate_spread(g, degree.top(k), eval);
  const bool ratio_ok = s_imr.mean >= 0.90 * s_greedy.mean;
  const double combined = std::hypot(s_imr.std_error, s_degree.std_error);
  const bool beats_degree = s_imr.mean >= s_degree.mean - 2 * combined;
  return {stable && ratio_ok && beats_degree,
          fmt("(a) top-50 stable after %zu iterations [%s]; (b) IMRank %.2f vs greedy %.2f, ratio %.3f >= 0.90; "
              "(c) degree %.2f, IMRank - degree = %.2f >= -%.2f",
              imr.report.iterations, to_string(imr.report.stop_reason).c_str(), s_imr.mean, s_greedy.mean,
              s_imr.mean / s_greedy.mean, s_degree.mean, s_imr.mean - s_degree.mean, 2 * combined)};
}

Outcome determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "imrank_acceptance";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "ba.txt").string();
  save_graph(path, barabasi_albert(300, 2, 5), ModelSpec{});
  std::size_t same = 0, total = 0;
  for (const char* algo : {"imrank:l=2,init=pagerank", "imrank:init=random:4", "greedy:trials=200", "degree",
                           "strength", "random:8"}) {
    const auto config = ExperimentConfig::from_json(
        {{"graph", path}, {"model", "tic:3"}, {"algo", algo}, {"k", "1,10,20"}, {"trials", 2000}, {"eval_seed", 6}});
    auto strip = [](nlohmann::json j) {
      j.erase("timing");
      return j;
    };
    const Graph g1 = load_experiment_graph(config);
    const auto a = strip(run_to_json(config, g1, run_algorithm(g1, config.algorithms[0], config)));
    const Graph g2 = load_experiment_graph(config);
    const auto b = strip(run_to_json(config, g2, run_algorithm(g2, config.algorithms[0], config)));
    same += a == b;
    ++total;
  }
  std::filesystem::remove_all(dir);
  return {same == total, fmt("%zu/%zu configurations reproduced exactly", same, total)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"1 LFA exactness on the five-node example", lfa_exactness},
      {"2 score conservation (LFA, generalized l=1..3)", conservation},
      {"3 generalized LFA collapses to LFA at l=1", collapse},
      {"4 oracle fidelity on the five-node example", oracle_fidelity},
      {"5 Monte-Carlo marginals vs reference MC row", mc_sanity},
      {"6 greedy order is self-consistent (exact)", greedy_self_consistency},
      {"7 exact IMRank converges monotonically", exact_imrank_convergence},
      {"8 monotone and submodular exact spread", submodularity},
      {"9 desk-scale behaviour on 1000-node WIC graph", desk_scale},
      {"10 run determinism", determinism},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
