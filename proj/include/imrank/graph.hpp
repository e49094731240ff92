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

#ifndef IMRANK_GRAPH_HPP_
#define IMRANK_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

namespace imrank {

using NodeId = std::uint32_t;
using ArcId = std::uint32_t;

struct Arc {
  NodeId source = 0;
  NodeId target = 0;
  double probability = 0.0;

  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Adjacency entry: the node on the other end and the index of the arc in
/// load order.
struct Neighbor {
  NodeId node = 0;
  ArcId arc = 0;
};

/// Immutable directed graph with per-arc propagation probabilities.
///
/// Arcs keep their load order (arc ids); both adjacency directions are
/// stored as CSR with neighbors sorted by ascending node id. Undirected
/// inputs are expanded to two arcs at load time, so every algorithm only
/// ever sees directed arcs.
class Graph {
 public:
  Graph() = default;

  /// Validates and builds. Throws std::invalid_argument on out-of-range ids,
  /// self-loops, duplicate arcs or probabilities outside [0, 1]. Empty
  /// `labels` means labels are the decimal ids.
  static Graph from_arcs(std::size_t node_count, std::vector<Arc> arcs,
                         bool directed, std::vector<std::string> labels = {},
                         bool probabilities_assigned = true);

  std::size_t node_count() const noexcept { return labels_.size(); }
  std::size_t arc_count() const noexcept { return arcs_.size(); }
  bool directed() const noexcept { return directed_; }
  /// False when some input line carried no probability and no model has
  /// been applied since.
  bool probabilities_assigned() const noexcept { return probabilities_assigned_; }

  std::span<const Arc> arcs() const noexcept { return arcs_; }
  const Arc& arc(ArcId id) const { return arcs_[id]; }
  double probability(ArcId id) const { return arcs_[id].probability; }

  std::span<const Neighbor> out_neighbors(NodeId v) const {
    return {out_adj_.data() + out_offsets_[v], out_adj_.data() + out_offsets_[v + 1]};
  }
  std::span<const Neighbor> in_neighbors(NodeId v) const {
    return {in_adj_.data() + in_offsets_[v], in_adj_.data() + in_offsets_[v + 1]};
  }
  std::size_t out_degree(NodeId v) const { return out_offsets_[v + 1] - out_offsets_[v]; }
  std::size_t in_degree(NodeId v) const { return in_offsets_[v + 1] - in_offsets_[v]; }

  const std::string& label(NodeId v) const { return labels_[v]; }
  std::span<const std::string> labels() const noexcept { return labels_; }
  std::optional<NodeId> find(std::string_view label) const;

  /// Copy with arc `i` carrying probabilities[i]; size must equal arc_count.
  Graph with_probabilities(std::span<const double> probabilities) const;

  bool valid_node(std::uint64_t v) const noexcept { return v < node_count(); }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.directed_ == b.directed_ && a.labels_ == b.labels_ && a.arcs_ == b.arcs_ &&
           a.probabilities_assigned_ == b.probabilities_assigned_;
  }

 private:
  void build_adjacency();

  bool directed_ = true;
  bool probabilities_assigned_ = true;
  std::vector<Arc> arcs_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> ids_;
  std::vector<std::size_t> out_offsets_{0};
  std::vector<Neighbor> out_adj_;
  std::vector<std::size_t> in_offsets_{0};
  std::vector<Neighbor> in_adj_;
};

/// Edge-list syntax or semantic error, tagged with the 1-based input line.
class GraphFormatError : public std::runtime_error {
 public:
  GraphFormatError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Parses "u v" / "u v p" lines; '#' starts a comment line. Labels are
/// remapped to dense ids in order of first appearance. Lines without p get
/// probability 0 and mark the graph as unassigned. With directed=false each
/// line emits both arcs.
Graph parse_edge_list(std::istream& in, bool directed);
Graph parse_edge_list(std::string_view text, bool directed);

/// One "label label p" line per arc in arc order; p printed round-trip exact.
std::string write_edge_list(const Graph& graph);

// Propagation models.

/// Weighted cascade: p(u,v) = 1 / indegree(v).
Graph assign_wic(const Graph& graph);
/// Trivalency: p drawn from {0.1, 0.01, 0.001}; arc i uses mix64(seed, i).
Graph assign_tic(const Graph& graph, std::uint64_t seed);
Graph assign_uniform(const Graph& graph, double p);

inline constexpr double kTicLevels[3] = {0.1, 0.01, 0.001};

/// Parsed form of "wic", "tic:SEED", "uniform:P" or "none".
struct ModelSpec {
  enum class Kind { kNone, kWic, kTic, kUniform };
  Kind kind = Kind::kNone;
  std::uint64_t seed = 0;
  double p = 0.0;

  static ModelSpec parse(std::string_view text);
  std::string to_string() const;
  Graph apply(const Graph& graph) const;
  nlohmann::json to_json() const;
};

/// Sidecar describing how a serialized graph was produced.
nlohmann::json graph_header(const Graph& graph, const ModelSpec& model);

/// Writes the edge list to `path` and the JSON header to `path + ".json"`.
void save_graph(const std::string& path, const Graph& graph, const ModelSpec& model);
/// Reads an edge list; if `path + ".json"` exists its directed flag and node
/// count are honored (a sidecar-described graph is read back arc for arc).
Graph load_graph(const std::string& path, bool directed);

}  // namespace imrank

#endif  // IMRANK_GRAPH_HPP_
