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


#include <benchmark/benchmark.h>

#include "gidn/config.h"
#include "gidn/model.h"
#include "gidn/synthetic.h"
#include "gidn/trainer.h"

namespace gidn {
namespace {

Dataset SbmData(std::size_t n, const RunConfig& config) {
  Dataset data;
  data.splits = HoldOutSplit(StochasticBlockModel(n, 4, 0.05, 0.002, 0), 0.05,
                             0.1, 0);
  FillEvalNegatives(&data.splits, config.data.eval_neg_per_pos,
                    config.data.negative_seed);
  return data;
}

RunConfig SmallConfig() {
  RunConfig cfg;
  cfg.model.embedding_dim = 16;
  cfg.model.hidden = 64;
  cfg.model.branches = {{TransitionKind::kSym, 8, 16},
                        {TransitionKind::kRw, 8, 16}};
  cfg.train.epochs = 1;
  cfg.train.batch_size = 512;
  cfg.eval.hits_k = {50};
  cfg.eval.select_k = 50;
  return cfg;
}

// Forward plus backward over one batch.
void BM_BackwardStep(benchmark::State& state) {
  RunConfig cfg = SmallConfig();
  const Dataset data = SbmData(state.range(0), cfg);
  const ModelConfig mc = ResolveModelConfig(cfg, data);
  const SparseGraph g =
      BuildCsr(data.splits.num_nodes, data.splits.train_edges);
  const TransitionBank bank(g, mc.branches, mc.self_loop_weight);
  const ModelParams params = InitParams(mc, data.splits.num_nodes, 0);
  LinkBatch batch;
  batch.pos_pairs.assign(data.splits.train_edges.begin(),
                         data.splits.train_edges.begin() + 512);
  batch.neg_pairs = data.splits.valid_negatives;
  batch.neg_pairs.resize(512);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Backward(bank, nullptr, mc, params, batch));
  }
}
BENCHMARK(BM_BackwardStep)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

// One full epoch with validation.
void BM_TrainEpoch(benchmark::State& state) {
  RunConfig cfg = SmallConfig();
  const Dataset data = SbmData(state.range(0), cfg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Train(cfg, data, 0));
  }
}
BENCHMARK(BM_TrainEpoch)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace gidn

BENCHMARK_MAIN();
