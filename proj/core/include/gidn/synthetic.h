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

#ifndef GIDN_SYNTHETIC_H_
#define GIDN_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gidn/graph.h"

namespace gidn {

// Two cliques of clique_size nodes (ids [0, s) and [s, 2s)) joined by the
// single bridge (s - 1, s).
EdgeList PlantedTwoCliques(std::size_t clique_size = 20);

// Node i belongs to block i * blocks / n.
std::vector<std::size_t> BlockAssignment(std::size_t num_nodes,
                                         std::size_t blocks);

// Every pair is an edge independently with probability p_in inside a block
// and p_out across blocks.
EdgeList StochasticBlockModel(std::size_t num_nodes, std::size_t blocks,
                              double p_in, double p_out, std::uint64_t seed);

// Shuffles the edges and holds out round(frac * m) of them for test, then
// for validation; the rest is training. Negatives are left empty.
DatasetSplits HoldOutSplit(const EdgeList& graph, double valid_frac,
                           double test_frac, std::uint64_t seed);

}  // namespace gidn

#endif  // GIDN_SYNTHETIC_H_
