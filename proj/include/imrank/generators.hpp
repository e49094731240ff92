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

// Synthetic graphs for tests and benchmarks. All deterministic in `seed`.

#ifndef IMRANK_GENERATORS_HPP_
#define IMRANK_GENERATORS_HPP_

#include <cstddef>
#include <cstdint>

#include "imrank/graph.hpp"

namespace imrank {

/// `arc_count` distinct directed arcs chosen uniformly among all n(n-1)
/// ordered pairs; probabilities 0 (unassigned).
Graph random_directed(std::size_t node_count, std::size_t arc_count, std::uint64_t seed);

/// Preferential attachment: each new node links to `edges_per_node` distinct
/// existing nodes chosen proportionally to degree. Undirected, expanded to
/// arcs.
Graph barabasi_albert(std::size_t node_count, std::size_t edges_per_node, std::uint64_t seed);

/// Ring lattice with `neighbors` (even) links per node, each rewired with
/// probability `rewire`. Undirected, expanded to arcs.
Graph watts_strogatz(std::size_t node_count, std::size_t neighbors, double rewire,
                     std::uint64_t seed);

/// Independent U[lo, hi) probability per arc.
Graph assign_random(const Graph& graph, double lo, double hi, std::uint64_t seed);

}  // namespace imrank

#endif  // IMRANK_GENERATORS_HPP_
