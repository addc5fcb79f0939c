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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Each check has a wall-clock budget that counts toward the verdict.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "gidn/config.h"
#include "gidn/diffusion.h"
#include "gidn/graph.h"
#include "gidn/heuristics.h"
#include "gidn/metrics.h"
#include "gidn/rng.h"
#include "gidn/synthetic.h"
#include "gidn/trainer.h"
#include "json.hpp"
#include "testing/datasets.h"
#include "testing/oracles.h"

namespace gidn {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

constexpr TransitionKind kKinds[] = {TransitionKind::kRw, TransitionKind::kSym,
                                     TransitionKind::kAdj};

Outcome DiffusionOracle() {
  Rng rng(DeriveSeed(2026, 1));
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 1 + rng.UniformInt(20);
    const std::size_t d = 1 + rng.UniformInt(4);
    const int depth = static_cast<int>(rng.UniformInt(5));
    const TransitionKind kind = kKinds[i % 3];
    const SparseGraph g = testing::RandomSparseGraph(rng, n);
    const Matrix x = testing::RandomMatrix(rng, n, d);
    const DiffusionStack s = Diffuse(BuildTransition(g, kind), x, depth);
    const auto want = testing::DensePowerDiffusion(
        testing::DenseTransition(g, kind), testing::ToEigen(x), depth);
    for (int k = 0; k <= depth; ++k) {
      worst = std::max(worst, testing::MaxAbsDiff(want[k], s.hops[k]));
    }
  }
  return {worst <= 1e-9, Fmt("50 graphs, max abs err %.3g (tol 1e-9)", worst)};
}

Outcome GradientCheck() {
  double worst = 0.0;
  std::string worst_group = "-";
  std::size_t groups = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = testing::RandomGradInstance(DeriveSeed(2026, 2, seed));
    for (const auto& g : testing::GradientCheck(inst, 1e-5)) {
      ++groups;
      if (g.rel_error > worst) {
        worst = g.rel_error;
        worst_group = g.name;
      }
    }
  }
  return {worst < 1e-4,
          Fmt("20 models, %zu parameter groups, max rel err %.3g in %s "
              "(tol 1e-4)",
              groups, worst, worst_group.c_str())};
}

Outcome TransitionInvariants() {
  Rng rng(DeriveSeed(2026, 3));
  double worst_row = 0.0;
  std::size_t asymmetric = 0;
  for (int i = 0; i < 200; ++i) {
    const SparseGraph g =
        testing::RandomSparseGraph(rng, 1 + rng.UniformInt(40));
    const auto rw = BuildTransition(g, TransitionKind::kRw);
    for (std::size_t u = 0; u < g.num_nodes(); ++u) {
      double sum = 0.0;
      for (std::size_t p = rw.offsets()[u]; p < rw.offsets()[u + 1]; ++p) {
        sum += rw.values()[p];
      }
      worst_row = std::max(worst_row, std::abs(sum - 1.0));
    }
    const Matrix sym = BuildTransition(g, TransitionKind::kSym).ToDense();
    for (std::size_t a = 0; a < sym.rows(); ++a) {
      for (std::size_t b = 0; b < a; ++b) {
        asymmetric += sym(a, b) != sym(b, a) ? 1 : 0;
      }
    }
  }
  return {worst_row <= 1e-12 && asymmetric == 0,
          Fmt("200 graphs, max |rw row sum - 1| %.3g (tol 1e-12), "
              "%zu asymmetric sym entries",
              worst_row, asymmetric)};
}

std::vector<double> ScoreSet(Rng& rng, std::size_t n, bool ties) {
  std::vector<double> v(n);
  for (double& x : v) {
    x = ties ? static_cast<double>(rng.UniformInt(5)) / 4.0 : rng.Normal();
  }
  return v;
}

Outcome RankingMetrics() {
  Rng rng(DeriveSeed(2026, 4));
  std::size_t mismatches = 0;
  double auc_err = 0.0;
  for (int i = 0; i < 100; ++i) {
    const bool ties = i % 2 == 0;
    const auto pos = ScoreSet(rng, 1 + rng.UniformInt(40), ties);
    const auto neg = ScoreSet(rng, 1 + rng.UniformInt(60), ties);
    for (std::size_t k : {std::size_t{1}, std::size_t{5}, std::size_t{20},
                          neg.size(), neg.size() + 3}) {
      mismatches += HitsAtK(pos, neg, k) != testing::HitsOracle(pos, neg, k);
    }
    mismatches += Mrr(pos, neg) != testing::MrrOracle(pos, neg);
    auc_err = std::max(auc_err, std::abs(Auc(pos, neg) -
                                         testing::AucOracle(pos, neg)));
  }
  return {mismatches == 0 && auc_err <= 1e-12,
          Fmt("100 score sets (50 tie-heavy), %zu hits/mrr mismatches, "
              "max auc err %.3g (tol 1e-12)",
              mismatches, auc_err)};
}

std::vector<SparseGraph> SmallGraphs() {
  std::vector<SparseGraph> out;
  out.push_back(BuildCsr(1, {}));
  out.push_back(BuildCsr(2, std::vector<NodePair>{{0, 1}}));
  out.push_back(BuildCsr(3, std::vector<NodePair>{{0, 1}, {1, 2}, {0, 2}}));
  out.push_back(BuildCsr(4, std::vector<NodePair>{{0, 1}, {1, 2}, {2, 3}}));
  out.push_back(BuildCsr(4, std::vector<NodePair>{{0, 1}, {2, 3}}));
  std::vector<NodePair> star;
  std::vector<NodePair> complete;
  for (NodeId v = 1; v < 15; ++v) star.push_back({0, v});
  for (NodeId u = 0; u < 8; ++u) {
    for (NodeId v = u + 1; v < 8; ++v) complete.push_back({u, v});
  }
  out.push_back(BuildCsr(15, star));
  out.push_back(BuildCsr(8, complete));
  Rng rng(DeriveSeed(2026, 5));
  for (std::size_t n = 2; n <= 15; ++n) {
    for (double p : {0.15, 0.35, 0.6}) {
      out.push_back(testing::RandomGraph(rng, n, p));
    }
  }
  return out;
}

Outcome HeuristicOracles() {
  std::size_t cn_mismatch = 0;
  double aa_err = 0.0;
  double rpr_err = 0.0;
  double sim_err = 0.0;
  const auto graphs = SmallGraphs();
  for (const SparseGraph& g : graphs) {
    const auto n = static_cast<NodeId>(g.num_nodes());
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = 0; v < n; ++v) {
        cn_mismatch +=
            CommonNeighbors(g, u, v) != testing::CommonNeighborsOracle(g, u, v);
        aa_err = std::max(aa_err, std::abs(AdamicAdar(g, u, v) -
                                           testing::AdamicAdarOracle(g, u, v)));
      }
      for (double alpha : {0.5, 0.85}) {
        const auto pi = RootedPageRank(g, u, alpha);
        const auto want = testing::RootedPageRankOracle(g, u, alpha);
        for (NodeId v = 0; v < n; ++v) {
          rpr_err = std::max(rpr_err, std::abs(pi[v] - want[v]));
        }
      }
    }
    for (auto [c, iters] : {std::pair{0.8, 5}, std::pair{0.6, 3}}) {
      const auto table = SimRank(g, c, iters);
      const auto want = testing::SimRankOracle(g, c, iters);
      for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = 0; v < n; ++v) {
          sim_err = std::max(sim_err, std::abs(table.Score(u, v) - want[u][v]));
        }
      }
    }
  }
  const bool pass = cn_mismatch == 0 && aa_err <= 1e-12 && rpr_err <= 1e-8 &&
                    sim_err <= 1e-10;
  return {pass, Fmt("%zu graphs (n<=15): cn mismatches %zu, aa err %.3g, "
                    "rpr err %.3g, simrank err %.3g",
                    graphs.size(), cn_mismatch, aa_err, rpr_err, sim_err)};
}

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since)
      .count();
}

Outcome PlantedCliques() {
  const auto start = std::chrono::steady_clock::now();
  const RunConfig cfg = testing::ShippedConfig("cliques.toml");
  const Dataset data =
      testing::HeldOutDataset(PlantedTwoCliques(20), 0.1, 0.0, 0, cfg);
  double worst = 1.0;
  int max_epoch = 0;
  for (std::uint64_t seed : cfg.seeds) {
    const TrainResult r = Train(cfg, data, seed);
    worst = std::min(worst, r.log[r.best_epoch - 1].valid_auc);
    max_epoch = std::max(max_epoch, static_cast<int>(r.log.size()));
  }
  const double elapsed = Seconds(start);
  return {worst > 0.9 && max_epoch <= 200 && elapsed < 30.0,
          Fmt("two 20-cliques, %zu seeds x %d epochs: min selected valid auc "
              "%.4f (> 0.9), %.1f s (< 30 s)",
              cfg.seeds.size(), max_epoch, worst, elapsed)};
}

Outcome StochasticBlocks() {
  const auto start = std::chrono::steady_clock::now();
  const RunConfig cfg = testing::ShippedConfig("sbm_desk.toml");
  const Dataset data = testing::HeldOutDataset(
      StochasticBlockModel(1000, 4, 0.05, 0.002, 0), 0.05, 0.1, 0, cfg);
  const EvalReport report = EvaluateRuns(cfg, data);
  double mean_auc = 0.0;
  double min_auc = 1.0;
  for (const RunMetrics& r : report.runs) {
    mean_auc += r.test.auc / static_cast<double>(report.runs.size());
    min_auc = std::min(min_auc, r.test.auc);
  }
  const SparseGraph graph = EvaluationGraph(cfg, data, EvalSplit::kTest);
  const HeuristicKind cn{HeuristicType::kCommonNeighbors};
  const double cn_auc =
      Auc(ScorePairs(graph, cn, data.splits.test_edges),
          ScorePairs(graph, cn, data.splits.test_negatives));
  const double elapsed = Seconds(start);
  return {mean_auc >= 0.80 && mean_auc >= cn_auc - 0.02 && elapsed < 300.0,
          Fmt("sbm n=1000: test auc mean %.4f over %zu seeds (min %.4f), "
              ">= 0.80 and >= cn %.4f - 0.02, %.1f s (< 300 s)",
              mean_auc, report.runs.size(), min_auc, cn_auc, elapsed)};
}

RunConfig SmallCliqueConfig(int epochs, std::vector<std::uint64_t> seeds) {
  RunConfig cfg = testing::ShippedConfig("cliques.toml");
  cfg.train.epochs = epochs;
  cfg.seeds = std::move(seeds);
  return cfg;
}

Outcome Determinism() {
  std::size_t checked = 0;
  bool same = true;
  for (bool augment : {false, true}) {
    RunConfig cfg = SmallCliqueConfig(25, {0, 1, 2});
    cfg.augment.enabled = augment;
    const Dataset data =
        testing::HeldOutDataset(PlantedTwoCliques(20), 0.1, 0.1, 0, cfg);
    const std::string a = ReportToJson(EvaluateRuns(cfg, data));
    const std::string b = ReportToJson(EvaluateRuns(cfg, data));
    same = same && a == b;
    checked += a.size();
  }
  return {same, Fmt("2 configs (plain, augmented) x 3 seeds evaluated twice: "
                    "%s (%zu bytes compared)",
                    same ? "byte-identical" : "DIFFERENT", checked)};
}

Outcome ProtocolFidelity() {
  RunConfig cfg = SmallCliqueConfig(20, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
  const Dataset data =
      testing::HeldOutDataset(PlantedTwoCliques(20), 0.1, 0.1, 0, cfg);
  const auto json =
      nlohmann::ordered_json::parse(ReportToJson(EvaluateRuns(cfg, data)));
  std::vector<std::string> problems;
  std::vector<std::string> keys;
  for (const auto& [k, v] : json.items()) keys.push_back(k);
  if (keys != std::vector<std::string>{"config_hash", "per_run", "aggregate",
                                       "runtime_s"}) {
    problems.push_back("top-level keys");
  }
  const auto& runs = json["per_run"];
  if (runs.size() != cfg.seeds.size()) problems.push_back("run count");

  std::vector<std::pair<std::string, std::vector<double>>> series;
  for (std::size_t k : cfg.eval.hits_k) {
    series.push_back({"hits@" + std::to_string(k), {}});
  }
  series.push_back({"mrr", {}});
  series.push_back({"auc", {}});
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (runs[i]["seed"] != cfg.seeds[i]) problems.push_back("seed order");
    for (std::size_t j = 0; j < cfg.eval.hits_k.size(); ++j) {
      series[j].second.push_back(
          runs[i]["hits"][std::to_string(cfg.eval.hits_k[j])].get<double>());
    }
    series[series.size() - 2].second.push_back(runs[i]["mrr"].get<double>());
    series.back().second.push_back(runs[i]["auc"].get<double>());
  }

  double worst = 0.0;
  const auto& agg = json["aggregate"];
  if (agg.size() != series.size()) problems.push_back("aggregate size");
  for (const auto& [name, values] : series) {
    for (double v : values) {
      if (!(v >= 0.0 && v <= 1.0)) problems.push_back(name + " out of [0,1]");
    }
    if (!agg.contains(name)) {
      problems.push_back("missing aggregate " + name);
      continue;
    }
    const auto want = testing::MeanStdOracle(values);
    worst = std::max(worst, std::abs(agg[name]["mean"].get<double>() - want.mean));
    worst = std::max(worst, std::abs(agg[name]["std"].get<double>() - want.std));
    if (agg[name]["n"] != values.size()) problems.push_back(name + " n");
  }
  if (worst > 1e-12) problems.push_back("aggregate mismatch");

  // A single seed reports std 0 with n = 1.
  const auto single = nlohmann::ordered_json::parse(
      ReportToJson(EvaluateRuns(SmallCliqueConfig(5, {4}), data)));
  for (const auto& [name, s] : single["aggregate"].items()) {
    if (s["std"].get<double>() != 0.0 || s["n"] != 1) {
      problems.push_back("single-seed " + name);
    }
  }

  const auto& hits50 = agg.contains("hits@50") ? agg["hits@50"] : agg.front();
  std::string detail = Fmt(
      "%zu runs, per-run values + mean/sample std; recomputed within %.3g "
      "(tol 1e-12); hits@50 %.4f +- %.4f",
      runs.size(), worst, hits50["mean"].get<double>(),
      hits50["std"].get<double>());
  for (const auto& p : problems) detail += "; " + p;
  return {problems.empty(), detail};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace gidn

int main() {
  using gidn::Criterion;
  const std::vector<Criterion> criteria = {
      {1, "diffusion matches dense powers", 5.0, gidn::DiffusionOracle},
      {2, "gradients match finite differences", 60.0, gidn::GradientCheck},
      {3, "transition invariants", 0.0, gidn::TransitionInvariants},
      {4, "ranking metrics match oracles", 0.0, gidn::RankingMetrics},
      {5, "heuristics match oracles", 0.0, gidn::HeuristicOracles},
      {6, "desk-scale learning: planted cliques", 30.0, gidn::PlantedCliques},
      {6, "desk-scale learning: stochastic block model", 300.0,
       gidn::StochasticBlocks},
      {7, "repeat evaluation is byte-identical", 0.0, gidn::Determinism},
      {8, "multi-seed report shape and aggregates", 0.0,
       gidn::ProtocolFidelity},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    gidn::Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = gidn::Seconds(start);
    const bool in_budget = c.budget_s <= 0.0 || elapsed < c.budget_s;
    const bool pass = out.pass && in_budget;
    failures += pass ? 0 : 1;
    std::string budget =
        c.budget_s > 0.0 ? gidn::Fmt(", budget %.0f s", c.budget_s) : "";
    std::printf("[%s] criterion %d: %s -- %s [%.2f s%s]\n",
                pass ? "PASS" : "FAIL", c.id, c.name, out.detail.c_str(),
                elapsed, budget.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu acceptance checks passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
