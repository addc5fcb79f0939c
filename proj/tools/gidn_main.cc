// Copyright 2026 The GIDN Authors.
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

// gidn: train, evaluate and inspect graph inception diffusion link predictors.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "gidn/augment.h"
#include "gidn/checkpoint.h"
#include "gidn/config.h"
#include "gidn/error.h"
#include "gidn/graph.h"
#include "gidn/heuristics.h"
#include "gidn/metrics.h"
#include "gidn/synthetic.h"
#include "gidn/trainer.h"

#ifndef GIDN_VERSION
#define GIDN_VERSION "dev"
#endif

namespace fs = std::filesystem;

namespace {

struct ConfigFlags {
  std::string path;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::vector<std::uint64_t> seeds;
  std::optional<int> epochs;
};

void AddConfigFlags(CLI::App* cmd, ConfigFlags* flags, bool required) {
  auto* opt = cmd->add_option("--config", flags->path, "Run config file");
  if (required) opt->required();
  cmd->add_option("--set", flags->overrides,
                  "Override a config value: section.key=value (repeatable)");
  cmd->add_option("--epochs", flags->epochs, "Override train.epochs");
}

// Relative data paths resolve against the config file's directory.
void ResolvePaths(gidn::RunConfig* config, const fs::path& config_path) {
  const fs::path base = config_path.parent_path();
  auto fix = [&](std::string* p) {
    if (!p->empty() && fs::path(*p).is_relative()) *p = (base / *p).string();
  };
  fix(&config->data.splits_dir);
  fix(&config->data.features);
}

gidn::RunConfig BuildConfig(const ConfigFlags& flags) {
  gidn::RunConfig config;
  if (!flags.path.empty()) {
    config = gidn::LoadConfig(flags.path);
    ResolvePaths(&config, flags.path);
  }
  for (const auto& o : flags.overrides) gidn::ApplyOverride(&config, o);
  if (flags.epochs) config.train.epochs = *flags.epochs;
  if (flags.seed) config.seeds = {*flags.seed};
  if (!flags.seeds.empty()) config.seeds = flags.seeds;
  gidn::ValidateConfig(config);
  return config;
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) gidn::ThrowData("cannot write file: " + path.string());
  out << text;
  if (!out) gidn::ThrowData("write failed: " + path.string());
}

std::string MetricsLine(const gidn::LinkMetrics& m) {
  std::string line;
  for (const auto& [k, v] : m.hits) {
    line += "hits@" + std::to_string(k) + "=" + std::to_string(v) + " ";
  }
  return line + "mrr=" + std::to_string(m.mrr) +
         " auc=" + std::to_string(m.auc);
}

int RunTrain(const ConfigFlags& flags, const std::string& out_path,
             const std::string& metrics_path, const std::string& log_path) {
  const gidn::RunConfig config = BuildConfig(flags);
  if (config.seeds.size() != 1) {
    gidn::ThrowUsage("train runs a single seed; pass --seed or use eval");
  }
  const gidn::Dataset data = gidn::LoadDataset(config);
  const std::uint64_t seed = config.seeds.front();
  const gidn::TrainResult trained = gidn::Train(config, data, seed);

  if (!log_path.empty()) {
    std::string text = "epoch\ttrain_loss\tvalid_hits\tvalid_auc\n";
    for (const auto& e : trained.log) {
      text += std::to_string(e.epoch) + "\t" + std::to_string(e.train_loss) +
              "\t" + (e.evaluated ? std::to_string(e.valid_hits) : "-") +
              "\t" + (e.evaluated ? std::to_string(e.valid_auc) : "-") + "\n";
    }
    WriteText(log_path, text);
  }
  if (!out_path.empty()) {
    gidn::SaveCheckpoint(out_path, {gidn::ConfigToText(config), trained.params,
                                    trained.rng_state});
  }

  gidn::EvalReport report;
  report.config_hash = gidn::ConfigHash(config);
  report.hits_k = config.eval.hits_k;
  report.runs.push_back({seed, trained.best_epoch,
                         gidn::EvaluateModel(config, data, trained.params,
                                             gidn::EvalSplit::kTest)});
  gidn::Aggregate(&report);
  std::cerr << "seed " << seed << " best_epoch " << trained.best_epoch
            << " test: " << MetricsLine(report.runs.front().test) << "\n";
  const std::string json = gidn::ReportToJson(report);
  if (!metrics_path.empty()) {
    WriteText(metrics_path, json);
  } else if (out_path.empty()) {
    std::cout << json;
  }
  return 0;
}

int RunEval(const ConfigFlags& flags, const std::string& checkpoint_path,
            const std::string& metrics_path, bool record_runtime) {
  if (!checkpoint_path.empty()) {
    const gidn::Checkpoint ckpt = gidn::LoadCheckpoint(checkpoint_path);
    ConfigFlags effective = flags;
    gidn::RunConfig config;
    if (flags.path.empty()) {
      config = gidn::ParseConfig(ckpt.config_text);
      for (const auto& o : flags.overrides) gidn::ApplyOverride(&config, o);
      gidn::ValidateConfig(config);
    } else {
      config = BuildConfig(effective);
    }
    const gidn::Dataset data = gidn::LoadDataset(config);
    gidn::ValidateParams(gidn::ResolveModelConfig(config, data),
                         data.splits.num_nodes, ckpt.params);
    gidn::EvalReport report;
    report.config_hash = gidn::ConfigHash(config);
    report.hits_k = config.eval.hits_k;
    report.runs.push_back({0, 0,
                           gidn::EvaluateModel(config, data, ckpt.params,
                                               gidn::EvalSplit::kTest)});
    gidn::Aggregate(&report);
    const std::string json = gidn::ReportToJson(report);
    metrics_path.empty() ? void(std::cout << json) : WriteText(metrics_path, json);
    return 0;
  }

  const gidn::RunConfig config = BuildConfig(flags);
  const gidn::Dataset data = gidn::LoadDataset(config);
  const gidn::EvalReport report =
      gidn::EvaluateRuns(config, data, record_runtime);
  for (const auto& [name, s] : report.aggregate) {
    std::cerr << name << ": " << s.mean << " ± " << s.std << " (n=" << s.n
              << ")\n";
  }
  const std::string json = gidn::ReportToJson(report);
  metrics_path.empty() ? void(std::cout << json) : WriteText(metrics_path, json);
  return 0;
}

struct HeuristicFlags {
  std::string kind = "cn";
  std::string graph;
  std::string pairs;
  std::string negatives;
  std::string out;
  std::string metrics;
  double alpha = 0.85;
  double c = 0.8;
  int iters = 5;
  std::vector<std::size_t> hits_k = {20, 50, 100};
};

int RunHeuristic(const ConfigFlags& cfg_flags, const HeuristicFlags& flags) {
  gidn::HeuristicKind kind;
  kind.type = gidn::ParseHeuristicType(flags.kind);
  kind.alpha = flags.alpha;
  kind.c = flags.c;
  kind.iters = flags.iters;
  gidn::ValidateHeuristic(kind);

  gidn::SparseGraph graph;
  std::vector<gidn::NodePair> pairs;
  std::vector<gidn::NodePair> negatives;
  std::vector<std::size_t> hits_k = flags.hits_k;
  if (!cfg_flags.path.empty()) {
    const gidn::RunConfig config = BuildConfig(cfg_flags);
    const gidn::Dataset data = gidn::LoadDataset(config);
    graph = gidn::EvaluationGraph(config, data, gidn::EvalSplit::kTest);
    pairs = data.splits.test_edges;
    negatives = data.splits.test_negatives;
    hits_k = config.eval.hits_k;
  } else {
    if (flags.graph.empty()) {
      gidn::ThrowUsage("heuristic needs --config or --graph");
    }
    const gidn::EdgeList edges = gidn::ReadEdgeList(flags.graph);
    graph = gidn::BuildCsr(edges.num_nodes, edges.edges);
  }
  if (!flags.pairs.empty()) pairs = gidn::ReadEdgeList(flags.pairs).edges;
  if (!flags.negatives.empty()) {
    negatives = gidn::ReadEdgeList(flags.negatives).edges;
  }
  if (pairs.empty()) gidn::ThrowUsage("heuristic: no pairs to score");
  if (negatives.empty()) {
    // Same sampler and default seed the trainer uses for missing *_neg.tsv.
    gidn::DatasetSplits s;
    s.num_nodes = graph.num_nodes();
    s.train_edges = graph.Edges();
    s.test_edges = pairs;
    const gidn::DataConfig defaults;
    gidn::FillEvalNegatives(&s, defaults.eval_neg_per_pos,
                            defaults.negative_seed);
    negatives = std::move(s.test_negatives);
  }

  const auto scores = gidn::ScorePairs(graph, kind, pairs);
  std::string table;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    table += std::to_string(pairs[i].u) + "\t" + std::to_string(pairs[i].v) +
             "\t" + std::to_string(scores[i]) + "\n";
  }
  if (!flags.out.empty()) {
    WriteText(flags.out, table);
  } else {
    std::cout << table;
  }

  {
    const auto neg_scores = gidn::ScorePairs(graph, kind, negatives);
    const gidn::LinkMetrics m = gidn::ScoreMetrics(scores, neg_scores, hits_k);
    nlohmann::ordered_json report;
    report["heuristic"] = std::string(gidn::HeuristicTypeName(kind.type));
    nlohmann::ordered_json hits = nlohmann::ordered_json::object();
    for (const auto& [k, v] : m.hits) hits[std::to_string(k)] = v;
    report["hits"] = std::move(hits);
    report["mrr"] = m.mrr;
    report["auc"] = m.auc;
    if (!flags.metrics.empty()) {
      WriteText(flags.metrics, report.dump(2) + "\n");
    }
    std::cerr << gidn::HeuristicTypeName(kind.type) << ": " << MetricsLine(m)
              << "\n";
  }
  return 0;
}

int RunWalks(const std::string& graph_path, std::size_t length,
             std::size_t per_node, std::uint64_t seed, std::size_t window,
             std::size_t tau, const std::string& dump_path) {
  const gidn::EdgeList edges = gidn::ReadEdgeList(graph_path);
  const gidn::SparseGraph graph = gidn::BuildCsr(edges.num_nodes, edges.edges);
  const gidn::WalkSet walks = gidn::SampleWalks(graph, length, per_node, seed);
  if (!dump_path.empty()) gidn::WriteWalks(dump_path, walks);
  const auto added = gidn::CooccurrenceAugment(graph, walks, window, tau);
  std::cout << "walks " << walks.walks.size() << "\n"
            << "cooccurrence_pairs " << added.size() << "\n";
  return 0;
}

struct GenerateFlags {
  std::string kind = "sbm";
  std::string out;
  std::size_t nodes = 1000;
  std::size_t blocks = 4;
  double p_in = 0.05;
  double p_out = 0.002;
  std::size_t clique = 20;
  double valid = 0.05;
  double test = 0.1;
  std::uint64_t seed = 0;
};

int RunGenerate(const GenerateFlags& f) {
  gidn::EdgeList graph;
  if (f.kind == "sbm") {
    graph = gidn::StochasticBlockModel(f.nodes, f.blocks, f.p_in, f.p_out,
                                       f.seed);
  } else if (f.kind == "cliques") {
    graph = gidn::PlantedTwoCliques(f.clique);
  } else {
    gidn::ThrowUsage("unknown generator '" + f.kind + "' (expected sbm|cliques)");
  }
  const gidn::DatasetSplits splits =
      gidn::HoldOutSplit(graph, f.valid, f.test, f.seed);
  gidn::WriteSplits(f.out, splits);
  std::cout << "nodes " << splits.num_nodes << " train "
            << splits.train_edges.size() << " valid "
            << splits.valid_edges.size() << " test " << splits.test_edges.size()
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GIDN link prediction: graph inception diffusion networks"};
  app.require_subcommand(1);

  ConfigFlags train_flags;
  std::string train_out;
  std::string train_metrics;
  std::string train_log;
  auto* train = app.add_subcommand("train", "Train one seeded model");
  AddConfigFlags(train, &train_flags, /*required=*/true);
  train->add_option("--seed", train_flags.seed, "Run seed");
  train->add_option("--out", train_out, "Checkpoint output path");
  train->add_option("--metrics", train_metrics, "Metrics JSON output path");
  train->add_option("--log", train_log, "Per-epoch TSV log path");

  ConfigFlags eval_flags;
  std::string eval_ckpt;
  std::string eval_metrics;
  bool record_runtime = false;
  auto* eval = app.add_subcommand(
      "eval", "Train and test once per seed, report mean and sample std");
  AddConfigFlags(eval, &eval_flags, /*required=*/false);
  eval->add_option("--seeds", eval_flags.seeds, "Seed list (overrides config)")
      ->delimiter(',');
  eval->add_option("--checkpoint", eval_ckpt,
                   "Evaluate a saved checkpoint instead of training");
  eval->add_option("--metrics", eval_metrics, "Metrics JSON output path");
  eval->add_flag("--record-runtime", record_runtime,
                 "Store wall-clock seconds in runtime_s");

  ConfigFlags heur_cfg;
  HeuristicFlags heur;
  auto* heuristic =
      app.add_subcommand("heuristic", "Score pairs with a classical heuristic");
  AddConfigFlags(heuristic, &heur_cfg, /*required=*/false);
  heuristic->add_option("--kind", heur.kind, "cn|aa|rpr|simrank")
      ->check(CLI::IsMember({"cn", "aa", "rpr", "simrank"}));
  heuristic->add_option("--graph", heur.graph, "Edge list used as the graph");
  heuristic->add_option("--pairs", heur.pairs, "Pairs to score");
  heuristic->add_option("--negatives", heur.negatives,
                        "Negative pairs; enables the Hits@K report");
  heuristic->add_option("--out", heur.out, "Score TSV output path");
  heuristic->add_option("--metrics", heur.metrics, "Metrics JSON output path");
  heuristic->add_option("--alpha", heur.alpha,
                        "Rooted PageRank continuation probability");
  heuristic->add_option("--c", heur.c, "SimRank decay");
  heuristic->add_option("--iters", heur.iters, "SimRank sweeps");
  heuristic->add_option("--hits", heur.hits_k, "Hits@K cutoffs")->delimiter(',');

  std::string walk_graph;
  std::string dump_walks;
  std::size_t walk_length = 10;
  std::size_t walks_per_node = 5;
  std::uint64_t walk_seed = 0;
  std::size_t window = 3;
  std::size_t tau = 3;
  auto* walks = app.add_subcommand("walks", "Sample uniform random walks");
  walks->add_option("--graph", walk_graph, "Edge list")->required();
  walks->add_option("--length", walk_length, "Walk length");
  walks->add_option("--per-node", walks_per_node, "Walks per start node");
  walks->add_option("--seed", walk_seed, "Seed");
  walks->add_option("--window", window, "Co-occurrence window");
  walks->add_option("--tau", tau, "Co-occurrence threshold");
  walks->add_option("--dump-walks", dump_walks,
                    "Write one walk per line to this path");

  GenerateFlags gen;
  auto* generate =
      app.add_subcommand("generate", "Write a synthetic split directory");
  generate->add_option("--kind", gen.kind, "sbm|cliques");
  generate->add_option("--out", gen.out, "Output directory")->required();
  generate->add_option("--nodes", gen.nodes, "SBM node count");
  generate->add_option("--blocks", gen.blocks, "SBM block count");
  generate->add_option("--p-in", gen.p_in, "SBM in-block edge probability");
  generate->add_option("--p-out", gen.p_out, "SBM cross-block probability");
  generate->add_option("--clique", gen.clique, "Clique size");
  generate->add_option("--valid", gen.valid, "Validation fraction");
  generate->add_option("--test", gen.test, "Test fraction");
  generate->add_option("--seed", gen.seed, "Seed");

  auto* version = app.add_subcommand("version", "Print the version");

  if (argc > 1 && argv[1][0] != '-') {
    bool known = false;
    for (const auto* sub : app.get_subcommands({})) {
      if (sub->check_name(argv[1])) known = true;
    }
    if (!known) {
      std::cerr << "error: unknown subcommand '" << argv[1] << "'\n\n"
                << app.help();
      return static_cast<int>(gidn::ErrorKind::kUsage);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return static_cast<int>(gidn::ErrorKind::kUsage);
  }

  try {
    if (*train) return RunTrain(train_flags, train_out, train_metrics, train_log);
    if (*eval) {
      if (eval_flags.path.empty() && eval_ckpt.empty()) {
        gidn::ThrowUsage("eval needs --config or --checkpoint");
      }
      return RunEval(eval_flags, eval_ckpt, eval_metrics, record_runtime);
    }
    if (*heuristic) return RunHeuristic(heur_cfg, heur);
    if (*walks) {
      return RunWalks(walk_graph, walk_length, walks_per_node, walk_seed,
                      window, tau, dump_walks);
    }
    if (*generate) return RunGenerate(gen);
    if (*version) {
      std::cout << "gidn " << GIDN_VERSION << "\n";
      return 0;
    }
  } catch (const gidn::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(gidn::ErrorKind::kData);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
