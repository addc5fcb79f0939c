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

#include "gidn/trainer.h"

#include <chrono>
#include <cmath>
#include <memory>

#include "gidn/augment.h"
#include "gidn/diffusion.h"
#include "gidn/error.h"
#include "gidn/rng.h"

namespace gidn {

Dataset LoadDataset(const RunConfig& config) {
  if (config.data.splits_dir.empty()) {
    ThrowUsage("config: data.splits_dir is not set");
  }
  Dataset data;
  data.splits = LoadSplits(config.data.splits_dir);
  if (config.data.num_nodes != 0) {
    if (config.data.num_nodes < data.splits.num_nodes) {
      ThrowData("config: data.num_nodes=" +
                std::to_string(config.data.num_nodes) +
                " is smaller than the ids in the splits (" +
                std::to_string(data.splits.num_nodes) + ")");
    }
    data.splits.num_nodes = config.data.num_nodes;
  }
  if (!config.data.features.empty()) {
    data.features = ReadFeatures(config.data.features, data.splits.num_nodes);
  }
  FillEvalNegatives(&data.splits, config.data.eval_neg_per_pos,
                    config.data.negative_seed);
  return data;
}

void FillEvalNegatives(DatasetSplits* splits, std::size_t per_pos,
                       std::uint64_t seed) {
  const std::size_t n = splits->num_nodes;
  PairSet positives = MakePairSet(splits->train_edges);
  for (const auto& p : splits->valid_edges) positives.insert(PairKey(p));
  for (const auto& p : splits->test_edges) positives.insert(PairKey(p));

  const auto fill = [&](const std::vector<NodePair>& pos,
                        std::vector<NodePair>* negs, std::uint64_t stream) {
    if (!negs->empty() || pos.empty()) return;
    if (n < 2) ThrowData("cannot sample negatives on fewer than 2 nodes");
    const std::size_t want = per_pos * pos.size();
    const std::size_t max_attempts = 1000 * want;
    Rng rng(DeriveSeed(seed, stream));
    PairSet chosen;
    for (std::size_t attempt = 0; negs->size() < want; ++attempt) {
      if (attempt >= max_attempts) {
        ThrowData("cannot find " + std::to_string(want) +
                  " distinct evaluation negatives (graph too dense)");
      }
      const auto u = static_cast<NodeId>(rng.UniformInt(n));
      const auto v = static_cast<NodeId>(rng.UniformInt(n));
      const std::uint64_t key = PairKey(u, v);
      if (u == v || positives.contains(key) || !chosen.insert(key).second) {
        continue;
      }
      negs->push_back(Canonical({u, v}));
    }
  };
  fill(splits->valid_edges, &splits->valid_negatives, 1);
  fill(splits->test_edges, &splits->test_negatives, 2);
}

ModelConfig ResolveModelConfig(const RunConfig& config, const Dataset& data) {
  ModelConfig model = config.model;
  model.feature_dim = data.features ? data.features->cols() : 0;
  if (UsesFeatures(model) && !data.features) {
    ThrowUsage("config: model.input='" +
               std::string(InputModeName(model.input)) +
               "' requires data.features");
  }
  return model;
}

SparseGraph EvaluationGraph(const RunConfig& config, const Dataset& data,
                            EvalSplit split) {
  const DatasetSplits& s = data.splits;
  if (split == EvalSplit::kTest && config.data.merge_valid_into_graph) {
    std::vector<NodePair> edges = s.train_edges;
    edges.insert(edges.end(), s.valid_edges.begin(), s.valid_edges.end());
    return BuildCsr(s.num_nodes, edges);
  }
  return BuildCsr(s.num_nodes, s.train_edges);
}

LinkMetrics ScoreMetrics(std::span<const double> pos_scores,
                         std::span<const double> neg_scores,
                         std::span<const std::size_t> hits_k) {
  LinkMetrics m;
  for (std::size_t k : hits_k) m.hits[k] = HitsAtK(pos_scores, neg_scores, k);
  m.mrr = Mrr(pos_scores, neg_scores);
  m.auc = Auc(pos_scores, neg_scores);
  return m;
}

namespace {

const FeatureMatrix* FeaturesOf(const Dataset& data) {
  return data.features ? &*data.features : nullptr;
}

struct SplitRefs {
  const std::vector<NodePair>* pos;
  const std::vector<NodePair>* neg;
};

SplitRefs RefsFor(const Dataset& data, EvalSplit split) {
  return split == EvalSplit::kValid
             ? SplitRefs{&data.splits.valid_edges, &data.splits.valid_negatives}
             : SplitRefs{&data.splits.test_edges, &data.splits.test_negatives};
}

LinkMetrics EvaluateWithBank(const TransitionBank& bank, const Dataset& data,
                             const ModelConfig& model,
                             const ModelParams& params,
                             std::span<const NodePair> pos,
                             std::span<const NodePair> neg,
                             std::span<const std::size_t> hits_k) {
  if (pos.empty() || neg.empty()) {
    ThrowData("evaluation split needs positive and negative pairs");
  }
  const Matrix reps =
      ComputeRepresentations(bank, FeaturesOf(data), model, params);
  const auto pos_scores = ScoreLinks(reps, pos, params);
  const auto neg_scores = ScoreLinks(reps, neg, params);
  return ScoreMetrics(pos_scores, neg_scores, hits_k);
}

}  // namespace

LinkMetrics EvaluateModel(const RunConfig& config, const Dataset& data,
                          const ModelParams& params, EvalSplit split) {
  const ModelConfig model = ResolveModelConfig(config, data);
  const SparseGraph graph = EvaluationGraph(config, data, split);
  const TransitionBank bank(graph, model.branches, model.self_loop_weight);
  const SplitRefs refs = RefsFor(data, split);
  return EvaluateWithBank(bank, data, model, params, *refs.pos, *refs.neg,
                          config.eval.hits_k);
}

TrainResult Train(const RunConfig& config, const Dataset& data,
                  std::uint64_t seed) {
  ValidateConfig(config);
  ValidateSplits(data.splits);
  const ModelConfig model = ResolveModelConfig(config, data);
  const std::size_t n = data.splits.num_nodes;
  if (data.splits.train_edges.empty()) ThrowData("no training edges");

  auto train_graph = std::make_shared<const SparseGraph>(
      BuildCsr(n, data.splits.train_edges));
  const TransitionBank base_bank(*train_graph, model.branches,
                                 model.self_loop_weight);
  const FeatureMatrix* features = FeaturesOf(data);

  TrainResult result;
  ModelParams params = InitParams(model, n, seed);
  result.initial_params = params;
  result.params = params;
  AdamState adam = InitAdam(params);
  Rng rng(DeriveSeed(seed, 0x7a11));

  const bool can_validate = !data.splits.valid_edges.empty() &&
                            !data.splits.valid_negatives.empty();
  const std::size_t select_k[] = {config.eval.select_k};
  bool have_best = false;
  double best_hits = 0.0;
  double best_auc = 0.0;

  std::vector<NodePair> order = data.splits.train_edges;
  const std::size_t batch_size = config.train.batch_size;

  for (int epoch = 1; epoch <= config.train.epochs; ++epoch) {
    std::unique_ptr<TransitionBank> augmented;
    if (config.augment.enabled) {
      const auto e = static_cast<std::uint64_t>(epoch);
      AugmentedGraphView view = EdgeDropout(
          train_graph, config.augment.dropout, DeriveSeed(seed, e, 1));
      const WalkSet walks =
          SampleWalks(*train_graph, config.augment.walk_length,
                      config.augment.walks_per_node, DeriveSeed(seed, e, 2));
      AddEdges(&view, CooccurrenceAugment(*train_graph, walks,
                                          config.augment.window,
                                          config.augment.tau));
      augmented = std::make_unique<TransitionBank>(
          view.Materialize(), model.branches, model.self_loop_weight);
    }
    const TransitionBank& bank = augmented ? *augmented : base_bank;

    // Fisher-Yates shuffle and random orientation so either endpoint can
    // anchor the corrupted pair.
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[rng.UniformInt(i)]);
    }
    for (NodePair& p : order) {
      if (rng.NextU64() & 1) std::swap(p.u, p.v);
    }

    std::optional<ForwardState> epoch_state;
    if (config.train.refresh_reps == RefreshMode::kEpoch) {
      epoch_state = Forward(bank, features, model, params);
    }

    double loss_sum = 0.0;
    std::size_t step = 0;
    for (std::size_t begin = 0; begin < order.size();
         begin += batch_size, ++step) {
      const std::size_t end = std::min(order.size(), begin + batch_size);
      LinkBatch batch;
      batch.pos_pairs.assign(order.begin() + static_cast<std::ptrdiff_t>(begin),
                             order.begin() + static_cast<std::ptrdiff_t>(end));
      batch.neg_pairs = SampleNegatives(
          *train_graph, batch.pos_pairs, config.train.negatives,
          DeriveSeed(seed, static_cast<std::uint64_t>(epoch), 1000 + step));

      BackwardResult br =
          epoch_state
              ? BackwardFromState(*epoch_state, bank, model, params, batch)
              : Backward(bank, features, model, params, batch);
      if (!std::isfinite(br.loss)) {
        ThrowNumeric("non-finite loss at epoch " + std::to_string(epoch) +
                     ", step " + std::to_string(step));
      }
      try {
        AdamStep(&params, br.grads, &adam, config.optim);
      } catch (const Error& e) {
        throw Error(e.kind(), std::string(e.what()) + " (epoch " +
                                  std::to_string(epoch) + ", step " +
                                  std::to_string(step) + ")");
      }
      loss_sum += br.loss * static_cast<double>(batch.pos_pairs.size());
    }

    EpochLog entry;
    entry.epoch = epoch;
    entry.train_loss = loss_sum / static_cast<double>(order.size());
    const bool eval_now = epoch % config.train.eval_every == 0 ||
                          epoch == config.train.epochs;
    if (eval_now && can_validate) {
      const LinkMetrics m = EvaluateWithBank(
          base_bank, data, model, params, data.splits.valid_edges,
          data.splits.valid_negatives, select_k);
      entry.evaluated = true;
      entry.valid_hits = m.hits.at(config.eval.select_k);
      entry.valid_auc = m.auc;
      // Best Hits@select_k; AUC breaks ties, the earlier epoch wins a full
      // tie.
      if (!have_best || entry.valid_hits > best_hits ||
          (entry.valid_hits == best_hits && entry.valid_auc > best_auc)) {
        have_best = true;
        best_hits = entry.valid_hits;
        best_auc = entry.valid_auc;
        result.params = params;
        result.best_epoch = epoch;
      }
    }
    result.log.push_back(entry);
  }
  if (!have_best) {
    result.params = params;
    result.best_epoch = config.train.epochs;
  }
  result.rng_state = rng.SaveState();
  return result;
}

EvalReport EvaluateRuns(const RunConfig& config, const Dataset& data,
                        bool record_runtime) {
  ValidateConfig(config);
  const auto start = std::chrono::steady_clock::now();
  EvalReport report;
  report.config_hash = ConfigHash(config);
  report.hits_k = config.eval.hits_k;
  for (std::uint64_t seed : config.seeds) {
    const TrainResult trained = Train(config, data, seed);
    RunMetrics run;
    run.seed = seed;
    run.best_epoch = trained.best_epoch;
    run.test = EvaluateModel(config, data, trained.params, EvalSplit::kTest);
    report.runs.push_back(std::move(run));
  }
  Aggregate(&report);
  if (record_runtime) {
    report.runtime_s = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  }
  return report;
}

}  // namespace gidn
