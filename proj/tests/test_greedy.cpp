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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "imrank/generators.hpp"
#include "imrank/greedy.hpp"
#include "imrank/imrank.hpp"
#include "test_support.hpp"

using namespace imrank;
using testing::g5;

TEST_CASE("greedy_celf: k = n telescopes to n under exact evaluation") {
  const Graph g = g5();
  const auto trace = greedy_celf(g, 5, Exact{});
  CHECK(trace.seeds_in_order.size() == 5);
  const double total = std::accumulate(trace.marginal_gains.begin(), trace.marginal_gains.end(), 0.0);
  CHECK(total == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("greedy_celf: zero probabilities pick ascending ids with gain 1") {
  const Graph g = assign_uniform(random_directed(8, 20, 1), 0.0);
  for (const Evaluator& e : {Evaluator{Exact{}}, Evaluator{MonteCarlo{50, 1, 0}}}) {
    const auto trace = greedy_celf(g, 4, e);
    CHECK(trace.seeds_in_order == SeedSet{0, 1, 2, 3});
    for (double gain : trace.marginal_gains) CHECK(gain == 1.0);
  }
}

TEST_CASE("greedy_celf: G5 with k = 2") {
  const Graph g = g5();
  // Singleton spreads by enumeration: v1 1.24, v2 1.4784, v3 1.2, v4 1.2, v5 1.
  CHECK(testing::brute_spread(g, testing::mask_of({1})) == doctest::Approx(1.4784).epsilon(1e-12));
  const auto trace = greedy_celf(g, 2, Exact{});
  CHECK(trace.seeds_in_order == SeedSet{1, 0});
  CHECK(trace.marginal_gains[0] == doctest::Approx(1.4784).epsilon(1e-12));
  CHECK(trace.marginal_gains[0] + trace.marginal_gains[1] ==
        doctest::Approx(exact_spread(g, trace.seeds_in_order)).epsilon(1e-12));
  CHECK(trace.evaluations < 5 + 4);
}

TEST_CASE("greedy_celf: errors") {
  const Graph g = g5();
  CHECK_THROWS_AS(greedy_celf(g, 6, Exact{}), std::invalid_argument);
  const Graph big = assign_uniform(random_directed(20, 40, 2), 0.5);
  CHECK_THROWS_AS(greedy_celf(big, 2, Exact{}), std::domain_error);
  CHECK(greedy_celf(g, 0, Exact{}).seeds_in_order.empty());
}

TEST_CASE("property: CELF equals naive greedy") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Graph g = testing::random_small(6, 1 + seed % 10, seed);
    const auto lazy = greedy_celf(g, 6, Exact{});
    const auto naive = greedy_naive(g, 6, Exact{});
    CHECK(lazy.seeds_in_order == naive.seeds_in_order);
    CHECK(lazy.marginal_gains == naive.marginal_gains);
    CHECK(lazy.evaluations <= naive.evaluations);
  }
  const Graph g = assign_wic(barabasi_albert(120, 2, 5));
  const MonteCarlo mc{200, 9, 0};
  const auto lazy = greedy_celf(g, 8, mc);
  const auto naive = greedy_naive(g, 8, mc);
  CHECK(lazy.seeds_in_order == naive.seeds_in_order);
  CHECK(lazy.evaluations < naive.evaluations);
}

TEST_CASE("property: gains are nonincreasing and the greedy order is self-consistent") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Graph g = testing::random_small(5 + seed % 3, 1 + seed % 10, seed + 77);
    const auto trace = greedy_celf(g, g.node_count(), Exact{});
    for (std::size_t i = 1; i < trace.marginal_gains.size(); ++i)
      CHECK(trace.marginal_gains[i] <= trace.marginal_gains[i - 1] + 1e-12);
    const auto ranking = Ranking::from_order(trace.seeds_in_order);
    CHECK(is_self_consistent(g, ranking, Exact{}, 1e-9).consistent);
  }
  // Monte-Carlo gains are evaluated on fixed worlds, so they stay ordered too.
  const auto mc = greedy_celf(assign_wic(barabasi_albert(150, 2, 1)), 15, MonteCarlo{300, 4, 0});
  for (std::size_t i = 1; i < mc.marginal_gains.size(); ++i)
    CHECK(mc.marginal_gains[i] <= mc.marginal_gains[i - 1]);
}

TEST_CASE("greedy trace json") {
  const auto j = to_json(greedy_celf(g5(), 2, Exact{}));
  CHECK(j["seeds_in_order"].size() == 2);
  CHECK(j["marginal_gains"].size() == 2);
  CHECK(j["evaluations"].get<std::size_t>() > 0);
}
