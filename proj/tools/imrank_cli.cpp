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

// imrank: command-line driver.
//
//   imrank run   --graph G --model wic --algo imrank --init degree --k 1,5,10
//   imrank eval  --graph G --model wic --seeds seeds.txt --trials 10000
//   imrank bench --graph G --model wic --algo degree --algo imrank:l=2 --k 50
//
// Exit status: 0 success, 2 configuration error, 3 runtime error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "imrank/experiment.hpp"

namespace {

constexpr int kConfigExit = 2;
constexpr int kRuntimeExit = 3;

struct Flags {
  std::string config_path;
  std::string graph;
  bool directed = false;
  bool undirected = false;
  std::string model;
  std::vector<std::string> algos;
  std::string init;
  std::size_t l = 1;
  double theta = 0.0;
  std::size_t max_iter = 10;
  std::string greedy_eval;
  std::uint64_t greedy_trials = 0;
  std::uint64_t greedy_seed = 0;
  std::string k;
  std::uint64_t trials = 0;
  std::uint64_t eval_seed = 0;
  std::string out;
  std::string format;
  unsigned threads = 0;
  std::string seeds;
};

void add_common(CLI::App& cmd, Flags& f) {
  cmd.add_option("--config", f.config_path, "JSON config file; flags override its values");
  cmd.add_option("--graph", f.graph, "edge-list file");
  cmd.add_flag("--directed", f.directed, "arcs as given (default)");
  cmd.add_flag("--undirected", f.undirected, "each line is an undirected edge");
  cmd.add_option("--model", f.model, "wic | tic:SEED | uniform:P | none");
  cmd.add_option("--trials", f.trials, "Monte-Carlo evaluation trials");
  cmd.add_option("--eval-seed", f.eval_seed, "base seed of evaluation trials");
  cmd.add_option("--threads", f.threads, "worker threads (0 = all cores)");
}

void add_algorithm_flags(CLI::App& cmd, Flags& f) {
  cmd.add_option("--algo", f.algos,
                 "imrank | greedy | degree | inversed-degree | strength | pagerank | random:SEED "
                 "(NAME:opt=val,... for per-algorithm options)");
  cmd.add_option("--init", f.init, "initial ranking for imrank");
  cmd.add_option("--l", f.l, "influence path depth");
  cmd.add_option("--theta", f.theta, "path probability threshold");
  cmd.add_option("--max-iter", f.max_iter, "IMRank iteration cap");
  cmd.add_option("--greedy-eval", f.greedy_eval, "exact | mc");
  cmd.add_option("--greedy-trials", f.greedy_trials, "Monte-Carlo trials per greedy evaluation");
  cmd.add_option("--greedy-seed", f.greedy_seed, "base seed for greedy evaluation");
  cmd.add_option("--k", f.k, "comma-separated k list");
  cmd.add_option("--out", f.out, "output path");
  cmd.add_option("--format", f.format, "json | csv");
}

nlohmann::json read_config(const std::string& path) {
  if (path.empty()) return nlohmann::json::object();
  std::ifstream in(path);
  if (!in) throw imrank::ConfigError("config", "cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw imrank::ConfigError("config", e.what());
  }
}

/// Config file values, overridden by flags given on the command line.
nlohmann::json merge(const CLI::App& cmd, const Flags& f, const char* default_format = "json") {
  nlohmann::json o = read_config(f.config_path);
  if (!o.contains("format")) o["format"] = default_format;
  auto given = [&](const char* name) { return cmd.count(name) > 0; };
  if (given("--graph")) o["graph"] = f.graph;
  if (f.directed && f.undirected) throw imrank::ConfigError("directed", "--directed and --undirected conflict");
  if (f.directed) o["directed"] = true;
  if (f.undirected) o["directed"] = false;
  if (given("--model")) o["model"] = f.model;
  if (given("--trials")) o["trials"] = f.trials;
  if (given("--eval-seed")) o["eval_seed"] = f.eval_seed;
  if (given("--threads")) o["threads"] = f.threads;
  if (cmd.get_option_no_throw("--algo") == nullptr) return o;
  if (given("--algo")) o["algo"] = f.algos;
  if (given("--init")) o["init"] = f.init;
  if (given("--l")) o["l"] = f.l;
  if (given("--theta")) o["theta"] = f.theta;
  if (given("--max-iter")) o["max_iter"] = f.max_iter;
  if (given("--greedy-eval")) o["greedy_eval"] = f.greedy_eval;
  if (given("--greedy-trials")) o["greedy_trials"] = f.greedy_trials;
  if (given("--greedy-seed")) o["greedy_seed"] = f.greedy_seed;
  if (given("--k")) o["k"] = f.k;
  if (given("--out")) o["out"] = f.out;
  if (given("--format")) o["format"] = f.format;
  return o;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

std::string companion_path(const std::string& path, const char* ext) {
  std::filesystem::path p(path);
  p.replace_extension(ext);
  return p.string();
}

int cmd_run(const CLI::App& cmd, const Flags& f) {
  auto config = imrank::ExperimentConfig::from_json(merge(cmd, f));
  if (config.algorithms.size() != 1)
    throw imrank::ConfigError("algo", "run takes exactly one algorithm (use bench for several)");
  const auto graph = imrank::load_experiment_graph(config);
  const auto run = imrank::run_algorithm(graph, config.algorithms.front(), config);
  const std::string json = imrank::run_to_json(config, graph, run).dump(2) + "\n";
  const std::string csv = imrank::run_to_csv(run);
  const bool as_csv = config.format == "csv";
  if (config.output_path.empty()) {
    std::cout << (as_csv ? csv : json);
    return 0;
  }
  write_file(config.output_path, as_csv ? csv : json);
  write_file(companion_path(config.output_path, as_csv ? ".json" : ".csv"), as_csv ? json : csv);
  return 0;
}

int cmd_bench(const CLI::App& cmd, const Flags& f) {
  auto config = imrank::ExperimentConfig::from_json(merge(cmd, f, "csv"));
  const auto graph = imrank::load_experiment_graph(config);
  std::vector<imrank::AlgorithmRun> runs;
  for (const auto& spec : config.algorithms) runs.push_back(imrank::run_algorithm(graph, spec, config));
  std::string text;
  if (config.format == "json") {
    nlohmann::json all = nlohmann::json::array();
    for (const auto& run : runs) all.push_back(imrank::run_to_json(config, graph, run));
    text = all.dump(2) + "\n";
  } else {
    text = imrank::bench_to_csv(runs);
  }
  if (config.output_path.empty()) std::cout << text;
  else write_file(config.output_path, text);
  return 0;
}

int cmd_eval(const CLI::App& cmd, const Flags& f) {
  nlohmann::json o = merge(cmd, f);
  if (!o.contains("k")) o["k"] = "1";
  auto config = imrank::ExperimentConfig::from_json(o);
  if (f.seeds.empty()) throw imrank::ConfigError("seeds", "no seed file given");
  const auto graph = imrank::load_experiment_graph(config);
  std::ifstream in(f.seeds);
  if (!in) throw std::runtime_error("cannot open seed file '" + f.seeds + "'");
  const auto seeds = imrank::read_node_list(graph, in);
  const auto estimate = imrank::estimate_spread(
      graph, seeds, imrank::MonteCarlo{config.eval_trials, config.eval_seed, config.threads});
  auto j = imrank::estimate_to_json(estimate);
  j["seed_count"] = seeds.size();
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Influence maximization by self-consistent ranking"};
  app.require_subcommand(1);
  Flags run_flags, bench_flags, eval_flags;
  auto* run = app.add_subcommand("run", "run one algorithm and evaluate its top-k seeds");
  add_common(*run, run_flags);
  add_algorithm_flags(*run, run_flags);
  auto* bench = app.add_subcommand("bench", "run several algorithms with shared evaluation seeds");
  add_common(*bench, bench_flags);
  add_algorithm_flags(*bench, bench_flags);
  auto* eval = app.add_subcommand("eval", "estimate the spread of a seed file");
  add_common(*eval, eval_flags);
  eval->add_option("--seeds", eval_flags.seeds, "file with one node label per line")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigExit;
  }

  try {
    if (run->parsed()) return cmd_run(*run, run_flags);
    if (bench->parsed()) return cmd_bench(*bench, bench_flags);
    if (eval->parsed()) return cmd_eval(*eval, eval_flags);
  } catch (const imrank::ConfigError& e) {
    std::cerr << "imrank: config error: " << e.what() << "\n";
    return kConfigExit;
  } catch (const std::exception& e) {
    std::cerr << "imrank: " << e.what() << "\n";
    return kRuntimeExit;
  }
  return 0;
}
