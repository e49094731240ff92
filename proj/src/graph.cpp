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

#include "imrank/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_set>

#include "imrank/rng.hpp"

namespace imrank {
namespace {

bool valid_probability(double p) { return p >= 0.0 && p <= 1.0; }

std::uint64_t pair_key(NodeId u, NodeId v) {
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

std::string format_probability(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", p);
  return buf;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

}  // namespace

GraphFormatError::GraphFormatError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

Graph Graph::from_arcs(std::size_t node_count, std::vector<Arc> arcs, bool directed,
                       std::vector<std::string> labels, bool probabilities_assigned) {
  if (node_count > std::numeric_limits<NodeId>::max())
    throw std::invalid_argument("node count exceeds 32-bit id space");
  if (labels.empty()) {
    labels.reserve(node_count);
    for (std::size_t v = 0; v < node_count; ++v) labels.push_back(std::to_string(v));
  }
  if (labels.size() != node_count)
    throw std::invalid_argument("label count does not match node count");

  Graph g;
  g.directed_ = directed;
  g.probabilities_assigned_ = probabilities_assigned;
  g.labels_ = std::move(labels);
  for (NodeId v = 0; v < g.labels_.size(); ++v) {
    if (!g.ids_.emplace(g.labels_[v], v).second)
      throw std::invalid_argument("duplicate node label '" + g.labels_[v] + "'");
  }

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(arcs.size());
  for (const Arc& a : arcs) {
    if (a.source >= node_count || a.target >= node_count)
      throw std::invalid_argument("arc endpoint out of range");
    if (a.source == a.target)
      throw std::invalid_argument("self-loop at node " + g.labels_[a.source]);
    if (!valid_probability(a.probability))
      throw std::invalid_argument("probability outside [0,1] on arc " + g.labels_[a.source] +
                                  "->" + g.labels_[a.target]);
    if (!seen.insert(pair_key(a.source, a.target)).second)
      throw std::invalid_argument("duplicate arc " + g.labels_[a.source] + "->" +
                                  g.labels_[a.target]);
  }
  g.arcs_ = std::move(arcs);
  g.build_adjacency();
  return g;
}

void Graph::build_adjacency() {
  const std::size_t n = labels_.size();
  out_offsets_.assign(n + 1, 0);
  in_offsets_.assign(n + 1, 0);
  for (const Arc& a : arcs_) {
    ++out_offsets_[a.source + 1];
    ++in_offsets_[a.target + 1];
  }
  for (std::size_t v = 0; v < n; ++v) {
    out_offsets_[v + 1] += out_offsets_[v];
    in_offsets_[v + 1] += in_offsets_[v];
  }
  out_adj_.resize(arcs_.size());
  in_adj_.resize(arcs_.size());
  std::vector<std::size_t> out_fill(out_offsets_.begin(), out_offsets_.end() - 1);
  std::vector<std::size_t> in_fill(in_offsets_.begin(), in_offsets_.end() - 1);
  for (ArcId id = 0; id < arcs_.size(); ++id) {
    const Arc& a = arcs_[id];
    out_adj_[out_fill[a.source]++] = {a.target, id};
    in_adj_[in_fill[a.target]++] = {a.source, id};
  }
  auto by_node = [](const Neighbor& x, const Neighbor& y) { return x.node < y.node; };
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(out_adj_.begin() + out_offsets_[v], out_adj_.begin() + out_offsets_[v + 1], by_node);
    std::sort(in_adj_.begin() + in_offsets_[v], in_adj_.begin() + in_offsets_[v + 1], by_node);
  }
}

std::optional<NodeId> Graph::find(std::string_view label) const {
  auto it = ids_.find(std::string(label));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

Graph Graph::with_probabilities(std::span<const double> probabilities) const {
  if (probabilities.size() != arcs_.size())
    throw std::invalid_argument("probability vector size does not match arc count");
  for (double p : probabilities) {
    if (!valid_probability(p)) throw std::invalid_argument("probability outside [0,1]");
  }
  Graph g = *this;
  for (std::size_t i = 0; i < arcs_.size(); ++i) g.arcs_[i].probability = probabilities[i];
  g.probabilities_assigned_ = true;
  return g;
}

Graph parse_edge_list(std::istream& in, bool directed) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, NodeId> ids;
  std::vector<Arc> arcs;
  std::unordered_set<std::uint64_t> seen;
  bool assigned = true;

  auto intern = [&](std::string_view label) {
    auto [it, inserted] = ids.emplace(std::string(label), static_cast<NodeId>(labels.size()));
    if (inserted) labels.emplace_back(label);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto tokens = split_ws(line);
    if (tokens.empty() || tokens[0].front() == '#') continue;
    if (tokens.size() != 2 && tokens.size() != 3)
      throw GraphFormatError(line_no, "expected 'u v' or 'u v p', got " +
                                          std::to_string(tokens.size()) + " tokens");
    double p = 0.0;
    if (tokens.size() == 3) {
      const std::string buf(tokens[2]);
      char* end = nullptr;
      p = std::strtod(buf.c_str(), &end);
      if (end != buf.c_str() + buf.size() || buf.empty())
        throw GraphFormatError(line_no, "non-numeric probability '" + buf + "'");
      if (!valid_probability(p))
        throw GraphFormatError(line_no, "probability " + buf + " outside [0,1]");
    } else {
      assigned = false;
    }
    if (tokens[0] == tokens[1]) throw GraphFormatError(line_no, "self-loop on '" + std::string(tokens[0]) + "'");
    const NodeId u = intern(tokens[0]);
    const NodeId v = intern(tokens[1]);

    auto add = [&](NodeId s, NodeId t) {
      if (!seen.insert(pair_key(s, t)).second)
        throw GraphFormatError(line_no, "duplicate arc " + labels[s] + " -> " + labels[t]);
      arcs.push_back({s, t, p});
    };
    add(u, v);
    if (!directed) add(v, u);
  }
  const std::size_t n = labels.size();
  return Graph::from_arcs(n, std::move(arcs), directed, std::move(labels), assigned);
}

Graph parse_edge_list(std::string_view text, bool directed) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in, directed);
}

std::string write_edge_list(const Graph& graph) {
  std::string out;
  for (const Arc& a : graph.arcs()) {
    out += graph.label(a.source);
    out += ' ';
    out += graph.label(a.target);
    out += ' ';
    out += format_probability(a.probability);
    out += '\n';
  }
  return out;
}

Graph assign_wic(const Graph& graph) {
  std::vector<double> p(graph.arc_count());
  for (ArcId i = 0; i < graph.arc_count(); ++i)
    p[i] = 1.0 / static_cast<double>(graph.in_degree(graph.arc(i).target));
  return graph.with_probabilities(p);
}

Graph assign_tic(const Graph& graph, std::uint64_t seed) {
  std::vector<double> p(graph.arc_count());
  for (ArcId i = 0; i < graph.arc_count(); ++i) {
    const auto level = static_cast<std::size_t>(to_unit(mix64(seed, i)) * 3.0);
    p[i] = kTicLevels[level];
  }
  return graph.with_probabilities(p);
}

Graph assign_uniform(const Graph& graph, double p) {
  if (!valid_probability(p)) throw std::invalid_argument("uniform probability outside [0,1]");
  const std::vector<double> all(graph.arc_count(), p);
  return graph.with_probabilities(all);
}

ModelSpec ModelSpec::parse(std::string_view text) {
  ModelSpec m;
  const auto colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  const std::string arg = colon == std::string_view::npos ? "" : std::string(text.substr(colon + 1));
  if (name == "none" && arg.empty()) return m;
  if (name == "wic" && arg.empty()) {
    m.kind = Kind::kWic;
    return m;
  }
  if (name == "tic") {
    m.kind = Kind::kTic;
    if (!arg.empty()) {
      auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), m.seed);
      if (ec != std::errc{} || ptr != arg.data() + arg.size())
        throw std::invalid_argument("model: bad tic seed '" + arg + "'");
    }
    return m;
  }
  if (name == "uniform") {
    m.kind = Kind::kUniform;
    char* end = nullptr;
    m.p = std::strtod(arg.c_str(), &end);
    if (arg.empty() || end != arg.c_str() + arg.size() || !valid_probability(m.p))
      throw std::invalid_argument("model: uniform probability must be in [0,1], got '" + arg + "'");
    return m;
  }
  throw std::invalid_argument("model: unknown model '" + std::string(text) +
                              "' (expected wic, tic:SEED, uniform:P or none)");
}

std::string ModelSpec::to_string() const {
  switch (kind) {
    case Kind::kNone: return "none";
    case Kind::kWic: return "wic";
    case Kind::kTic: return "tic:" + std::to_string(seed);
    case Kind::kUniform: return "uniform:" + format_probability(p);
  }
  return "none";
}

Graph ModelSpec::apply(const Graph& graph) const {
  switch (kind) {
    case Kind::kNone: return graph;
    case Kind::kWic: return assign_wic(graph);
    case Kind::kTic: return assign_tic(graph, seed);
    case Kind::kUniform: return assign_uniform(graph, p);
  }
  return graph;
}

nlohmann::json ModelSpec::to_json() const {
  nlohmann::json j;
  switch (kind) {
    case Kind::kNone: j["name"] = "none"; break;
    case Kind::kWic: j["name"] = "wic"; break;
    case Kind::kTic:
      j["name"] = "tic";
      j["seed"] = seed;
      j["levels"] = {kTicLevels[0], kTicLevels[1], kTicLevels[2]};
      j["draw"] = "per-arc";
      break;
    case Kind::kUniform:
      j["name"] = "uniform";
      j["p"] = p;
      break;
  }
  return j;
}

nlohmann::json graph_header(const Graph& graph, const ModelSpec& model) {
  nlohmann::json j;
  j["node_count"] = graph.node_count();
  j["arc_count"] = graph.arc_count();
  j["directed"] = graph.directed();
  j["model"] = model.to_json();
  bool isolated = false;
  for (NodeId v = 0; v < graph.node_count(); ++v)
    isolated = isolated || (graph.in_degree(v) == 0 && graph.out_degree(v) == 0);
  // Isolated nodes cannot be expressed in the edge list; keep the full
  // label table so ids survive a reload.
  if (isolated) j["labels"] = std::vector<std::string>(graph.labels().begin(), graph.labels().end());
  return j;
}

void save_graph(const std::string& path, const Graph& graph, const ModelSpec& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "# " << (graph.directed() ? "directed" : "undirected (arcs expanded)") << '\n';
  out << write_edge_list(graph);
  std::ofstream side(path + ".json", std::ios::binary);
  if (!side) throw std::runtime_error("cannot open '" + path + ".json' for writing");
  side << graph_header(graph, model).dump(2) << '\n';
}

Graph load_graph(const std::string& path, bool directed) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open graph file '" + path + "'");
  const std::string side_path = path + ".json";
  if (!std::filesystem::exists(side_path)) return parse_edge_list(in, directed);

  std::ifstream side(side_path, std::ios::binary);
  const auto header = nlohmann::json::parse(side);
  Graph arcs_only = parse_edge_list(in, /*directed=*/true);
  std::vector<std::string> labels(arcs_only.labels().begin(), arcs_only.labels().end());
  std::vector<Arc> arcs(arcs_only.arcs().begin(), arcs_only.arcs().end());
  if (header.contains("labels")) {
    labels = header.at("labels").get<std::vector<std::string>>();
    std::unordered_map<std::string, NodeId> ids;
    for (NodeId v = 0; v < labels.size(); ++v) ids.emplace(labels[v], v);
    for (Arc& a : arcs) {
      auto s = ids.find(arcs_only.label(a.source));
      auto t = ids.find(arcs_only.label(a.target));
      if (s == ids.end() || t == ids.end())
        throw std::runtime_error("sidecar label table does not cover '" + path + "'");
      a.source = s->second;
      a.target = t->second;
    }
  }
  const auto n = header.at("node_count").get<std::size_t>();
  if (n != labels.size())
    throw std::runtime_error("sidecar node_count " + std::to_string(n) + " does not match '" +
                             path + "' (" + std::to_string(labels.size()) + " nodes)");
  return Graph::from_arcs(n, std::move(arcs), header.at("directed").get<bool>(), std::move(labels),
                          arcs_only.probabilities_assigned());
}

}  // namespace imrank
