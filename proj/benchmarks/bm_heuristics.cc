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

#include <vector>

#include "gidn/graph.h"
#include "gidn/heuristics.h"
#include "gidn/rng.h"
#include "gidn/synthetic.h"

namespace gidn {
namespace {

SparseGraph SbmGraph(std::size_t n) {
  const EdgeList edges = StochasticBlockModel(n, 4, 20.0 / n, 1.0 / n, 3);
  return BuildCsr(edges.num_nodes, edges.edges);
}

std::vector<NodePair> RandomPairs(std::size_t n, std::size_t count) {
  Rng rng(5);
  std::vector<NodePair> pairs(count);
  for (NodePair& p : pairs) {
    p = {static_cast<NodeId>(rng.UniformInt(n)),
         static_cast<NodeId>(rng.UniformInt(n))};
  }
  return pairs;
}

void BM_ScorePairs(benchmark::State& state, HeuristicType type) {
  const SparseGraph g = SbmGraph(state.range(0));
  const auto pairs = RandomPairs(g.num_nodes(), 10000);
  HeuristicKind kind;
  kind.type = type;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ScorePairs(g, kind, pairs));
  }
  state.SetItemsProcessed(state.iterations() * pairs.size());
}
BENCHMARK_CAPTURE(BM_ScorePairs, cn, HeuristicType::kCommonNeighbors)
    ->Arg(10000);
BENCHMARK_CAPTURE(BM_ScorePairs, aa, HeuristicType::kAdamicAdar)->Arg(10000);

void BM_RootedPageRank(benchmark::State& state) {
  const SparseGraph g = SbmGraph(state.range(0));
  NodeId root = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(RootedPageRank(g, root, 0.85));
    root = (root + 1) % g.num_nodes();
  }
}
BENCHMARK(BM_RootedPageRank)->Arg(1000)->Arg(10000);

void BM_SimRank(benchmark::State& state) {
  const SparseGraph g = SbmGraph(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(SimRank(g, 0.8, 5));
  }
}
BENCHMARK(BM_SimRank)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace gidn

BENCHMARK_MAIN();
