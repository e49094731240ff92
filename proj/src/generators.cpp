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

#include "imrank/generators.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "imrank/rng.hpp"

namespace imrank {
namespace {

Graph undirected_from_edges(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
  std::vector<Arc> arcs;
  arcs.reserve(2 * edges.size());
  for (auto [u, v] : edges) {
    arcs.push_back({u, v, 0.0});
    arcs.push_back({v, u, 0.0});
  }
  return Graph::from_arcs(n, std::move(arcs), /*directed=*/false, {}, false);
}

}  // namespace

Graph random_directed(std::size_t node_count, std::size_t arc_count, std::uint64_t seed) {
  const std::size_t pairs = node_count < 2 ? 0 : node_count * (node_count - 1);
  if (arc_count > pairs) throw std::invalid_argument("more arcs requested than ordered pairs");
  SplitMix64 rng(seed);
  std::set<std::pair<NodeId, NodeId>> chosen;
  std::vector<Arc> arcs;
  while (arcs.size() < arc_count) {
    const auto u = static_cast<NodeId>(rng.below(node_count));
    const auto v = static_cast<NodeId>(rng.below(node_count));
    if (u == v || !chosen.emplace(u, v).second) continue;
    arcs.push_back({u, v, 0.0});
  }
  return Graph::from_arcs(node_count, std::move(arcs), true, {}, arc_count == 0);
}

Graph barabasi_albert(std::size_t node_count, std::size_t edges_per_node, std::uint64_t seed) {
  if (edges_per_node == 0) throw std::invalid_argument("edges_per_node must be positive");
  SplitMix64 rng(seed);
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<NodeId> endpoints;  // each node once per incident edge
  const std::size_t core = std::min(node_count, edges_per_node + 1);
  for (NodeId u = 0; u < core; ++u) {
    for (NodeId v = u + 1; v < core; ++v) {
      edges.emplace_back(u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  for (NodeId v = static_cast<NodeId>(core); v < node_count; ++v) {
    std::vector<NodeId> targets;
    while (targets.size() < edges_per_node) {
      const NodeId t = endpoints[rng.below(endpoints.size())];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    std::sort(targets.begin(), targets.end());
    for (NodeId t : targets) {
      edges.emplace_back(t, v);
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
  }
  return undirected_from_edges(node_count, edges);
}

Graph watts_strogatz(std::size_t node_count, std::size_t neighbors, double rewire,
                     std::uint64_t seed) {
  if (neighbors % 2 != 0 || neighbors >= node_count)
    throw std::invalid_argument("neighbors must be even and below node_count");
  SplitMix64 rng(seed);
  std::set<std::pair<NodeId, NodeId>> present;
  auto key = [](NodeId a, NodeId b) { return std::minmax(a, b); };
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId u = 0; u < node_count; ++u) {
    for (std::size_t d = 1; d <= neighbors / 2; ++d) {
      const auto v = static_cast<NodeId>((u + d) % node_count);
      edges.emplace_back(u, v);
      present.insert(key(u, v));
    }
  }
  for (auto& [u, v] : edges) {
    if (rng.uniform() >= rewire) continue;
    for (int attempt = 0; attempt < 32; ++attempt) {
      const auto w = static_cast<NodeId>(rng.below(node_count));
      if (w == u || present.count(key(u, w))) continue;
      present.erase(key(u, v));
      present.insert(key(u, w));
      v = w;
      break;
    }
  }
  return undirected_from_edges(node_count, edges);
}

Graph assign_random(const Graph& graph, double lo, double hi, std::uint64_t seed) {
  std::vector<double> p(graph.arc_count());
  for (ArcId i = 0; i < graph.arc_count(); ++i) p[i] = lo + (hi - lo) * to_unit(mix64(seed, i));
  return graph.with_probabilities(p);
}

}  // namespace imrank
