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

#include "imrank/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>

namespace imrank {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::uint64_t parse_u64(const std::string& field, std::string_view text) {
  const std::string t = trim(text);
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size())
    throw ConfigError(field, "expected a nonnegative integer, got '" + t + "'");
  return value;
}

double parse_double(const std::string& field, std::string_view text) {
  const std::string t = trim(text);
  char* end = nullptr;
  const double value = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size())
    throw ConfigError(field, "expected a number, got '" + t + "'");
  return value;
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

/// Reads an integer option that may be given as JSON number or string.
std::uint64_t json_u64(const nlohmann::json& j, const std::string& field) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer()) {
    if (j.get<std::int64_t>() < 0) throw ConfigError(field, "must be nonnegative");
    return static_cast<std::uint64_t>(j.get<std::int64_t>());
  }
  if (j.is_string()) return parse_u64(field, j.get<std::string>());
  throw ConfigError(field, "expected an integer");
}

double json_double(const nlohmann::json& j, const std::string& field) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_double(field, j.get<std::string>());
  throw ConfigError(field, "expected a number");
}

void check_lfa(const LfaOptions& lfa) {
  if (lfa.depth == 0) throw ConfigError("l", "must be at least 1");
  if (!(lfa.theta >= 0.0 && lfa.theta < 1.0)) throw ConfigError("theta", "must be in [0,1)");
}

}  // namespace

RankerSpec RankerSpec::parse(std::string_view text) {
  RankerSpec r;
  const std::string t = trim(text);
  if (t == "degree") r.kind = RankerKind::kDegree;
  else if (t == "inversed-degree") r.kind = RankerKind::kInversedDegree;
  else if (t == "strength") r.kind = RankerKind::kStrength;
  else if (t == "pagerank") r.kind = RankerKind::kPageRank;
  else if (t == "random") r.kind = RankerKind::kRandom;
  else if (t.rfind("random:", 0) == 0) {
    r.kind = RankerKind::kRandom;
    r.seed = parse_u64("init", std::string_view(t).substr(7));
  } else {
    throw ConfigError("init", "unknown ranking '" + t +
                                  "' (expected degree, inversed-degree, strength, pagerank, random:SEED)");
  }
  return r;
}

std::string RankerSpec::to_string() const {
  switch (kind) {
    case RankerKind::kDegree: return "degree";
    case RankerKind::kInversedDegree: return "inversed-degree";
    case RankerKind::kStrength: return "strength";
    case RankerKind::kPageRank: return "pagerank";
    case RankerKind::kRandom: return "random:" + std::to_string(seed);
  }
  return "degree";
}

Ranking RankerSpec::build(const Graph& graph) const {
  switch (kind) {
    case RankerKind::kDegree: return rank_degree(graph);
    case RankerKind::kInversedDegree: return rank_inversed_degree(graph);
    case RankerKind::kStrength: return rank_strength(graph);
    case RankerKind::kPageRank: return rank_pagerank(graph);
    case RankerKind::kRandom: return rank_random(graph, seed);
  }
  return rank_degree(graph);
}

AlgorithmSpec AlgorithmSpec::parse(std::string_view text, const AlgorithmSpec& defaults) {
  const std::string t = trim(text);
  const auto colon = t.find(':');
  const std::string name = t.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : t.substr(colon + 1);

  AlgorithmSpec spec = defaults;
  if (name == "imrank" || name == "greedy") {
    spec.kind = name == "imrank" ? Kind::kImrank : Kind::kGreedy;
    std::size_t pos = 0;
    while (pos < rest.size()) {
      const auto comma = rest.find(',', pos);
      const std::string item = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      pos = comma == std::string::npos ? rest.size() : comma + 1;
      if (trim(item).empty()) continue;
      const auto eq = item.find('=');
      const std::string key = trim(item.substr(0, eq));
      const std::string value = eq == std::string::npos ? "" : item.substr(eq + 1);
      if (spec.kind == Kind::kImrank && key == "init") spec.ranker = RankerSpec::parse(value);
      else if (spec.kind == Kind::kImrank && key == "l") spec.lfa.depth = parse_u64("l", value);
      else if (spec.kind == Kind::kImrank && key == "theta") spec.lfa.theta = parse_double("theta", value);
      else if (spec.kind == Kind::kImrank && key == "max_iter") spec.max_iterations = parse_u64("max-iter", value);
      else if (spec.kind == Kind::kGreedy && (key == "exact" || key == "mc") && eq == std::string::npos)
        spec.greedy_exact = key == "exact";
      else if (spec.kind == Kind::kGreedy && key == "eval") {
        const std::string v = trim(value);
        if (v != "exact" && v != "mc") throw ConfigError("greedy-eval", "expected exact or mc, got '" + v + "'");
        spec.greedy_exact = v == "exact";
      } else if (spec.kind == Kind::kGreedy && key == "trials") spec.greedy_trials = parse_u64("greedy-trials", value);
      else if (spec.kind == Kind::kGreedy && key == "seed") spec.greedy_seed = parse_u64("greedy-seed", value);
      else throw ConfigError("algo", "unknown option '" + key + "' for " + name);
    }
  } else {
    spec.kind = Kind::kRanker;
    try {
      spec.ranker = RankerSpec::parse(t);
    } catch (const ConfigError&) {
      throw ConfigError("algo", "unknown algorithm '" + t + "'");
    }
  }
  if (spec.kind == Kind::kImrank) {
    check_lfa(spec.lfa);
    if (spec.max_iterations == 0) throw ConfigError("max-iter", "must be positive");
  }
  if (spec.kind == Kind::kGreedy && !spec.greedy_exact && spec.greedy_trials == 0)
    throw ConfigError("greedy-trials", "must be positive");
  return spec;
}

std::string AlgorithmSpec::to_string() const {
  switch (kind) {
    case Kind::kImrank:
      return "imrank:init=" + ranker.to_string() + ",l=" + std::to_string(lfa.depth) +
             ",theta=" + format_number(lfa.theta) + ",max_iter=" + std::to_string(max_iterations);
    case Kind::kGreedy:
      return greedy_exact ? "greedy:eval=exact"
                          : "greedy:eval=mc,trials=" + std::to_string(greedy_trials) +
                                ",seed=" + std::to_string(greedy_seed);
    case Kind::kRanker: return ranker.to_string();
  }
  return {};
}

nlohmann::json AlgorithmSpec::to_json() const {
  nlohmann::json j;
  j["spec"] = to_string();
  switch (kind) {
    case Kind::kImrank:
      j["name"] = "imrank";
      j["init"] = ranker.to_string();
      j["l"] = lfa.depth;
      j["theta"] = lfa.theta;
      j["max_iter"] = max_iterations;
      break;
    case Kind::kGreedy:
      j["name"] = "greedy";
      j["eval"] = greedy_exact ? "exact" : "mc";
      if (!greedy_exact) {
        j["trials"] = greedy_trials;
        j["seed"] = greedy_seed;
      }
      break;
    case Kind::kRanker: j["name"] = ranker.to_string(); break;
  }
  if (kind != Kind::kGreedy && ranker.kind == RankerKind::kPageRank) {
    const PageRankOptions pr;
    j["pagerank"] = {{"teleport", pr.teleport},
                     {"transitions", "uniform over out-arcs"},
                     {"direction", "graph as given"},
                     {"tolerance", pr.tolerance},
                     {"max_iterations", pr.max_iterations}};
  }
  return j;
}

std::vector<std::size_t> parse_k_list(std::string_view text) {
  std::vector<std::size_t> ks;
  std::size_t pos = 0;
  const std::string t(text);
  while (pos <= t.size()) {
    const auto comma = t.find(',', pos);
    const std::string item = t.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    ks.push_back(static_cast<std::size_t>(parse_u64("k", item)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return ks;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& o) {
  ExperimentConfig c;
  if (!o.is_object()) throw ConfigError("config", "expected a JSON object");
  if (o.contains("graph")) c.graph_path = o.at("graph").get<std::string>();
  if (o.contains("directed")) {
    if (!o.at("directed").is_boolean()) throw ConfigError("directed", "expected true or false");
    c.directed = o.at("directed").get<bool>();
  }
  if (o.contains("model")) {
    try {
      c.model = ModelSpec::parse(o.at("model").get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ConfigError("model", e.what());
    }
  }

  AlgorithmSpec defaults;
  if (o.contains("init")) defaults.ranker = RankerSpec::parse(o.at("init").get<std::string>());
  if (o.contains("l")) defaults.lfa.depth = json_u64(o.at("l"), "l");
  if (o.contains("theta")) defaults.lfa.theta = json_double(o.at("theta"), "theta");
  if (o.contains("max_iter")) defaults.max_iterations = json_u64(o.at("max_iter"), "max-iter");
  if (o.contains("greedy_eval")) {
    const auto v = o.at("greedy_eval").get<std::string>();
    if (v != "exact" && v != "mc") throw ConfigError("greedy-eval", "expected exact or mc, got '" + v + "'");
    defaults.greedy_exact = v == "exact";
  }
  if (o.contains("greedy_trials")) defaults.greedy_trials = json_u64(o.at("greedy_trials"), "greedy-trials");
  if (o.contains("greedy_seed")) defaults.greedy_seed = json_u64(o.at("greedy_seed"), "greedy-seed");
  check_lfa(defaults.lfa);
  if (defaults.max_iterations == 0) throw ConfigError("max-iter", "must be positive");

  std::vector<std::string> algos{"imrank"};
  if (o.contains("algo")) {
    const auto& a = o.at("algo");
    if (a.is_string()) algos = {a.get<std::string>()};
    else if (a.is_array()) algos = a.get<std::vector<std::string>>();
    else throw ConfigError("algo", "expected a string or a list of strings");
  }
  for (const auto& text : algos) c.algorithms.push_back(AlgorithmSpec::parse(text, defaults));
  if (c.algorithms.empty()) throw ConfigError("algo", "at least one algorithm is required");

  if (o.contains("k")) {
    const auto& k = o.at("k");
    if (k.is_string()) c.k_list = parse_k_list(k.get<std::string>());
    else if (k.is_array()) {
      c.k_list.clear();
      for (const auto& x : k) c.k_list.push_back(static_cast<std::size_t>(json_u64(x, "k")));
    } else if (k.is_number()) c.k_list = {static_cast<std::size_t>(json_u64(k, "k"))};
    else throw ConfigError("k", "expected a list of positive integers");
  }
  if (c.k_list.empty()) throw ConfigError("k", "list must not be empty");
  for (std::size_t i = 0; i < c.k_list.size(); ++i) {
    if (c.k_list[i] == 0) throw ConfigError("k", "values must be positive");
    if (i > 0 && c.k_list[i] <= c.k_list[i - 1]) throw ConfigError("k", "list must be strictly ascending");
  }
  if (o.contains("trials")) c.eval_trials = json_u64(o.at("trials"), "trials");
  if (c.eval_trials == 0) throw ConfigError("trials", "must be at least 1");
  if (o.contains("eval_seed")) c.eval_seed = json_u64(o.at("eval_seed"), "eval-seed");
  if (o.contains("out")) c.output_path = o.at("out").get<std::string>();
  if (o.contains("format")) {
    c.format = o.at("format").get<std::string>();
    if (c.format != "json" && c.format != "csv") throw ConfigError("format", "expected json or csv");
  }
  if (o.contains("threads")) c.threads = static_cast<unsigned>(json_u64(o.at("threads"), "threads"));
  return c;
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json algos = nlohmann::json::array();
  for (const auto& a : algorithms) algos.push_back(a.to_json());
  return {{"graph", graph_path},   {"directed", directed},       {"model", model.to_json()},
          {"algorithms", algos},   {"k", k_list},                {"trials", eval_trials},
          {"eval_seed", eval_seed}, {"out", output_path},        {"format", format}};
}

void ExperimentConfig::validate(const Graph& graph) const {
  if (k_list.back() > graph.node_count())
    throw ConfigError("k", "largest k (" + std::to_string(k_list.back()) + ") exceeds node count " +
                               std::to_string(graph.node_count()));
  for (const auto& a : algorithms) {
    if (a.kind == AlgorithmSpec::Kind::kGreedy && a.greedy_exact &&
        uncertain_arc_count(graph) > kMaxExactArcs)
      throw ConfigError("greedy-eval", "exact evaluation needs at most " + std::to_string(kMaxExactArcs) +
                                           " arcs with 0<p<1, graph has " +
                                           std::to_string(uncertain_arc_count(graph)));
  }
}

Graph load_experiment_graph(const ExperimentConfig& config) {
  if (config.graph_path.empty()) throw ConfigError("graph", "no graph file given");
  Graph graph = load_graph(config.graph_path, config.directed);
  if (config.model.kind == ModelSpec::Kind::kNone) {
    if (!graph.probabilities_assigned())
      throw ConfigError("model", "graph has arcs without probabilities; pass a model");
    return graph;
  }
  return config.model.apply(graph);
}

AlgorithmRun run_algorithm(const Graph& graph, const AlgorithmSpec& spec,
                           const ExperimentConfig& config) {
  config.validate(graph);
  AlgorithmRun run;
  run.spec = spec;
  const std::size_t max_k = config.k_list.back();

  switch (spec.kind) {
    case AlgorithmSpec::Kind::kRanker: {
      const auto start = Clock::now();
      const Ranking r = spec.ranker.build(graph);
      run.init_seconds = seconds_since(start);
      run.seeds.assign(r.order().begin(), r.order().begin() + static_cast<std::ptrdiff_t>(max_k));
      break;
    }
    case AlgorithmSpec::Kind::kImrank: {
      auto start = Clock::now();
      const Ranking initial = spec.ranker.build(graph);
      run.init_seconds = seconds_since(start);
      start = Clock::now();
      IMRankOptions options;
      options.k = max_k;
      options.max_iterations = spec.max_iterations;
      auto result = imrank_iterate(graph, initial, spec.lfa, options);
      run.algorithm_seconds = seconds_since(start);
      run.seeds.assign(result.ranking.order().begin(),
                       result.ranking.order().begin() + static_cast<std::ptrdiff_t>(max_k));
      run.convergence = std::move(result.report);
      break;
    }
    case AlgorithmSpec::Kind::kGreedy: {
      const auto start = Clock::now();
      Evaluator evaluator = Exact{};
      if (!spec.greedy_exact) evaluator = MonteCarlo{spec.greedy_trials, spec.greedy_seed, config.threads};
      run.greedy = greedy_celf(graph, max_k, evaluator);
      run.algorithm_seconds = seconds_since(start);
      run.seeds = run.greedy->seeds_in_order;
      break;
    }
  }

  const auto start = Clock::now();
  const MonteCarlo eval{config.eval_trials, config.eval_seed, config.threads};
  for (std::size_t k : config.k_list) {
    const std::span<const NodeId> top(run.seeds.data(), k);
    run.results.push_back({k, estimate_spread(graph, top, eval)});
  }
  run.evaluation_seconds = seconds_since(start);
  return run;
}

nlohmann::json estimate_to_json(const SpreadEstimate& e) {
  return {{"mean", e.mean}, {"std_error", e.std_error}, {"trials", e.trials}, {"base_seed", e.base_seed}};
}

nlohmann::json run_to_json(const ExperimentConfig& config, const Graph& graph,
                           const AlgorithmRun& run) {
  nlohmann::json j;
  j["config"] = config.to_json();
  j["graph"] = graph_header(graph, config.model);
  j["algorithm"] = run.spec.to_json();
  std::vector<std::string> labels;
  for (NodeId v : run.seeds) labels.push_back(graph.label(v));
  j["seeds"] = labels;
  nlohmann::json results = nlohmann::json::array();
  for (const auto& r : run.results) {
    results.push_back({{"k", r.k}, {"spread", r.estimate.mean}, {"std_error", r.estimate.std_error},
                       {"trials", r.estimate.trials}});
  }
  j["results"] = results;
  if (run.convergence) j["convergence"] = to_json(*run.convergence);
  if (run.greedy) j["greedy"] = to_json(*run.greedy);
  j["timing"] = {{"init_ranking_seconds", run.init_seconds},
                 {"algorithm_seconds", run.algorithm_seconds},
                 {"evaluation_seconds", run.evaluation_seconds}};
  return j;
}

std::string run_to_csv(const AlgorithmRun& run) {
  std::string out = "k,spread,std_error,seconds\n";
  const double seconds = run.init_seconds + run.algorithm_seconds;
  for (const auto& r : run.results) {
    out += std::to_string(r.k) + "," + format_number(r.estimate.mean) + "," +
           format_number(r.estimate.std_error) + "," + format_number(seconds) + "\n";
  }
  return out;
}

std::string bench_to_csv(const std::vector<AlgorithmRun>& runs) {
  std::string out = "algorithm,k,spread,std_error,seconds\n";
  for (const auto& run : runs) {
    const double seconds = run.init_seconds + run.algorithm_seconds;
    for (const auto& r : run.results) {
      out += "\"" + run.spec.to_string() + "\"," + std::to_string(r.k) + "," +
             format_number(r.estimate.mean) + "," + format_number(r.estimate.std_error) + "," +
             format_number(seconds) + "\n";
    }
  }
  return out;
}

}  // namespace imrank
