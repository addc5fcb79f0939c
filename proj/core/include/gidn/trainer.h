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

#ifndef GIDN_TRAINER_H_
#define GIDN_TRAINER_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gidn/config.h"
#include "gidn/graph.h"
#include "gidn/metrics.h"
#include "gidn/model.h"

namespace gidn {

struct Dataset {
  DatasetSplits splits;
  std::optional<FeatureMatrix> features;
};

// Loads splits (and features) named by config.data, then fills in any
// missing evaluation negatives.
Dataset LoadDataset(const RunConfig& config);

// Fills empty valid/test negative lists with distinct uniformly random node
// pairs that are not positives in any split, per_pos per positive. Pairs are
// a function of seed only.
void FillEvalNegatives(DatasetSplits* splits, std::size_t per_pos,
                       std::uint64_t seed);

// config.model with feature_dim taken from the dataset.
ModelConfig ResolveModelConfig(const RunConfig& config, const Dataset& data);

struct EpochLog {
  int epoch = 0;
  double train_loss = 0.0;
  bool evaluated = false;
  double valid_hits = 0.0;  // Hits@select_k
  double valid_auc = 0.0;

  friend bool operator==(const EpochLog&, const EpochLog&) = default;
};

struct TrainResult {
  // Parameters of the best validation epoch.
  ModelParams params;
  ModelParams initial_params;
  std::vector<EpochLog> log;
  int best_epoch = 0;
  std::string rng_state;
};

// One seeded training run: epochs of {optional augmentation resample,
// forward, mini-batch scoring, loss, backward, Adam}. Validation is scored
// every eval_every epochs and on the final epoch. Throws kNumeric on a
// non-finite loss.
TrainResult Train(const RunConfig& config, const Dataset& data,
                  std::uint64_t seed);

struct LinkMetrics {
  std::map<std::size_t, double> hits;
  double mrr = 0.0;
  double auc = 0.0;
};

enum class EvalSplit { kValid, kTest };

// Graph used for diffusion at evaluation: training edges, plus validation
// edges for the test split when merge_valid_into_graph is set.
SparseGraph EvaluationGraph(const RunConfig& config, const Dataset& data,
                            EvalSplit split);

LinkMetrics ScoreMetrics(std::span<const double> pos_scores,
                         std::span<const double> neg_scores,
                         std::span<const std::size_t> hits_k);

LinkMetrics EvaluateModel(const RunConfig& config, const Dataset& data,
                          const ModelParams& params, EvalSplit split);

struct RunMetrics {
  std::uint64_t seed = 0;
  int best_epoch = 0;
  LinkMetrics test;
};

struct EvalReport {
  std::string config_hash;
  std::vector<std::size_t> hits_k;
  std::vector<RunMetrics> runs;
  // Metric name -> aggregate, in hits@K..., mrr, auc order.
  std::vector<std::pair<std::string, Summary>> aggregate;
  std::optional<double> runtime_s;
};

// Recomputes the aggregate block from runs.
void Aggregate(EvalReport* report);

// Trains and tests once per seed, in seed order, and aggregates mean and
// sample std. runtime_s is only filled when record_runtime is set, so the
// default report is a pure function of (config, data).
EvalReport EvaluateRuns(const RunConfig& config, const Dataset& data,
                        bool record_runtime = false);

// JSON with fixed key order: config_hash, per_run, aggregate, runtime_s.
std::string ReportToJson(const EvalReport& report);

}  // namespace gidn

#endif  // GIDN_TRAINER_H_
