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

#ifndef GIDN_AUGMENT_H_
#define GIDN_AUGMENT_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <memory>
#include <span>
#include <unordered_set>
#include <vector>

#include "gidn/graph.h"

namespace gidn {

struct WalkSet {
  std::vector<std::vector<NodeId>> walks;
  std::size_t walk_length = 0;
  std::size_t walks_per_node = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const WalkSet&, const WalkSet&) = default;
};

// Uniform (DeepWalk-style) walks: walks_per_node walks from every node,
// node-major order. A walk stops early only at an isolated node. Each start
// node draws from its own stream DeriveSeed(seed, node), so the result does
// not depend on the order start nodes are processed in.
WalkSet SampleWalks(const SparseGraph& graph, std::size_t walk_length,
                    std::size_t walks_per_node, std::uint64_t seed);

// One walk per line, space-separated node ids.
void WriteWalks(const std::filesystem::path& path, const WalkSet& walks);

inline constexpr std::size_t kNeverAdd = std::numeric_limits<std::size_t>::max();

// Unordered pairs (u < v) that co-occur within `window` positions at least
// `tau` times across all walks and are not already edges. Sorted.
std::vector<NodePair> CooccurrenceAugment(const SparseGraph& graph,
                                          const WalkSet& walks,
                                          std::size_t window, std::size_t tau);

// Effective arc set is (base \ dropped) U added, kept symmetric.
struct AugmentedGraphView {
  std::shared_ptr<const SparseGraph> base;
  std::vector<NodePair> added;
  std::vector<NodePair> dropped;

  SparseGraph Materialize() const;
};

// Drops every undirected edge independently with probability p in [0, 1).
AugmentedGraphView EdgeDropout(std::shared_ptr<const SparseGraph> graph,
                               double p, std::uint64_t seed);

// Adds pairs that are neither base edges, dropped edges, self-loops nor
// already added.
void AddEdges(AugmentedGraphView* view, std::span<const NodePair> pairs);

using PairSet = std::unordered_set<std::uint64_t>;

PairSet MakePairSet(std::span<const NodePair> pairs);

// Q corrupted pairs (u, v') per positive (u, v) with v' uniform over nodes,
// resampled while (u, v') is a self-pair, an edge, a positive or excluded.
// Throws kData when a slot needs more than 1000 rejections.
std::vector<NodePair> SampleNegatives(const SparseGraph& graph,
                                      std::span<const NodePair> pos_pairs,
                                      std::size_t q, std::uint64_t seed,
                                      const PairSet& exclude = {});

}  // namespace gidn

#endif  // GIDN_AUGMENT_H_
