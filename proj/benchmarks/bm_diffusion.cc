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

#include "gidn/diffusion.h"
#include "gidn/graph.h"
#include "gidn/rng.h"
#include "gidn/synthetic.h"

namespace gidn {
namespace {

SparseGraph SbmGraph(std::size_t n) {
  const EdgeList edges = StochasticBlockModel(n, 4, 20.0 / n, 1.0 / n, 7);
  return BuildCsr(edges.num_nodes, edges.edges);
}

Matrix Noise(std::size_t rows, std::size_t cols) {
  Rng rng(11);
  Matrix m(rows, cols);
  for (double& v : m.values()) v = rng.Uniform(-1.0, 1.0);
  return m;
}

void BM_BuildTransition(benchmark::State& state) {
  const SparseGraph g = SbmGraph(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(BuildTransition(g, TransitionKind::kSym));
  }
  state.SetItemsProcessed(state.iterations() * g.num_arcs());
}
BENCHMARK(BM_BuildTransition)->Arg(1000)->Arg(10000);

// One K-hop stack; args are nodes, width, depth.
void BM_Diffuse(benchmark::State& state) {
  const SparseGraph g = SbmGraph(state.range(0));
  const TransitionMatrix t = BuildTransition(g, TransitionKind::kRw);
  const Matrix x = Noise(g.num_nodes(), state.range(1));
  const int depth = static_cast<int>(state.range(2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Diffuse(t, x, depth));
  }
  state.SetItemsProcessed(state.iterations() * depth * t.nnz() *
                          state.range(1));
}
BENCHMARK(BM_Diffuse)
    ->Args({1000, 64, 3})
    ->Args({10000, 64, 3})
    ->Args({10000, 16, 8});

void BM_DiffuseBackward(benchmark::State& state) {
  const SparseGraph g = SbmGraph(state.range(0));
  const TransitionMatrix t = BuildTransition(g, TransitionKind::kSym);
  const DiffusionStack s = Diffuse(t, Noise(g.num_nodes(), 64), 3);
  std::vector<Matrix> grads(s.hops.size(), Noise(g.num_nodes(), 64));
  for (auto _ : state) {
    benchmark::DoNotOptimize(DiffuseBackward(t, grads));
  }
}
BENCHMARK(BM_DiffuseBackward)->Arg(1000)->Arg(10000);

}  // namespace
}  // namespace gidn

BENCHMARK_MAIN();
