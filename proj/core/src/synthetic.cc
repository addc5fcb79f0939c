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

#include "gidn/synthetic.h"

#include <cmath>

#include "gidn/error.h"
#include "gidn/rng.h"

namespace gidn {

EdgeList PlantedTwoCliques(std::size_t clique_size) {
  if (clique_size < 2) ThrowUsage("clique size must be >= 2");
  EdgeList out;
  out.num_nodes = 2 * clique_size;
  for (std::size_t base : {std::size_t{0}, clique_size}) {
    for (std::size_t i = 0; i < clique_size; ++i) {
      for (std::size_t j = i + 1; j < clique_size; ++j) {
        out.edges.push_back({static_cast<NodeId>(base + i),
                             static_cast<NodeId>(base + j)});
      }
    }
  }
  out.edges.push_back({static_cast<NodeId>(clique_size - 1),
                       static_cast<NodeId>(clique_size)});
  return out;
}

std::vector<std::size_t> BlockAssignment(std::size_t num_nodes,
                                         std::size_t blocks) {
  if (blocks < 1) ThrowUsage("block count must be >= 1");
  std::vector<std::size_t> block(num_nodes);
  for (std::size_t i = 0; i < num_nodes; ++i) block[i] = i * blocks / num_nodes;
  return block;
}

EdgeList StochasticBlockModel(std::size_t num_nodes, std::size_t blocks,
                              double p_in, double p_out, std::uint64_t seed) {
  if (!(p_in >= 0.0 && p_in <= 1.0 && p_out >= 0.0 && p_out <= 1.0)) {
    ThrowUsage("SBM probabilities must be in [0, 1]");
  }
  const auto block = BlockAssignment(num_nodes, blocks);
  Rng rng(DeriveSeed(seed, 0x5b3));
  EdgeList out;
  out.num_nodes = num_nodes;
  for (std::size_t u = 0; u < num_nodes; ++u) {
    for (std::size_t v = u + 1; v < num_nodes; ++v) {
      const double p = block[u] == block[v] ? p_in : p_out;
      if (rng.Bernoulli(p)) {
        out.edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
      }
    }
  }
  return out;
}

DatasetSplits HoldOutSplit(const EdgeList& graph, double valid_frac,
                           double test_frac, std::uint64_t seed) {
  if (!(valid_frac >= 0.0 && test_frac >= 0.0 && valid_frac + test_frac < 1.0)) {
    ThrowUsage("held-out fractions must be non-negative and sum below 1");
  }
  std::vector<NodePair> edges;
  edges.reserve(graph.edges.size());
  for (const NodePair& e : graph.edges) {
    if (e.u != e.v) edges.push_back(Canonical(e));
  }
  Rng rng(DeriveSeed(seed, 0x5711));
  for (std::size_t i = edges.size(); i > 1; --i) {
    std::swap(edges[i - 1], edges[rng.UniformInt(i)]);
  }
  const auto m = static_cast<double>(edges.size());
  const auto n_test = static_cast<std::size_t>(std::llround(test_frac * m));
  const auto n_valid = static_cast<std::size_t>(std::llround(valid_frac * m));

  DatasetSplits splits;
  splits.num_nodes = graph.num_nodes;
  auto it = edges.begin();
  splits.test_edges.assign(it, it + static_cast<std::ptrdiff_t>(n_test));
  it += static_cast<std::ptrdiff_t>(n_test);
  splits.valid_edges.assign(it, it + static_cast<std::ptrdiff_t>(n_valid));
  it += static_cast<std::ptrdiff_t>(n_valid);
  splits.train_edges.assign(it, edges.end());
  return splits;
}

}  // namespace gidn
