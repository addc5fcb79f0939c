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

#include "gidn/augment.h"

#include <algorithm>
#include <fstream>
#include <unordered_map>

#include "gidn/error.h"
#include "gidn/rng.h"

namespace gidn {

WalkSet SampleWalks(const SparseGraph& graph, std::size_t walk_length,
                    std::size_t walks_per_node, std::uint64_t seed) {
  if (walk_length < 1) ThrowUsage("walk_length must be >= 1");
  WalkSet out;
  out.walk_length = walk_length;
  out.walks_per_node = walks_per_node;
  out.seed = seed;
  out.walks.reserve(graph.num_nodes() * walks_per_node);
  for (NodeId start = 0; start < graph.num_nodes(); ++start) {
    Rng rng(DeriveSeed(seed, start));
    for (std::size_t w = 0; w < walks_per_node; ++w) {
      std::vector<NodeId> walk;
      walk.reserve(walk_length);
      walk.push_back(start);
      while (walk.size() < walk_length) {
        auto next = graph.neighbors(walk.back());
        if (next.empty()) break;
        walk.push_back(next[rng.UniformInt(next.size())]);
      }
      out.walks.push_back(std::move(walk));
    }
  }
  return out;
}

void WriteWalks(const std::filesystem::path& path, const WalkSet& walks) {
  std::ofstream out(path);
  if (!out) ThrowData("cannot write walks: " + path.string());
  for (const auto& walk : walks.walks) {
    for (std::size_t i = 0; i < walk.size(); ++i) {
      if (i) out << ' ';
      out << walk[i];
    }
    out << '\n';
  }
}

std::vector<NodePair> CooccurrenceAugment(const SparseGraph& graph,
                                          const WalkSet& walks,
                                          std::size_t window,
                                          std::size_t tau) {
  if (window < 1) ThrowUsage("cooccurrence window must be >= 1");
  if (tau < 1) ThrowUsage("cooccurrence tau must be >= 1");
  std::unordered_map<std::uint64_t, std::size_t> counts;
  for (const auto& walk : walks.walks) {
    for (std::size_t i = 0; i < walk.size(); ++i) {
      const std::size_t end = std::min(walk.size(), i + window + 1);
      for (std::size_t j = i + 1; j < end; ++j) {
        if (walk[i] != walk[j]) ++counts[PairKey(walk[i], walk[j])];
      }
    }
  }
  std::vector<NodePair> out;
  for (const auto& [key, count] : counts) {
    if (count < tau) continue;
    const NodePair p{static_cast<NodeId>(key >> 32),
                     static_cast<NodeId>(key & 0xffffffffu)};
    if (!graph.HasEdge(p.u, p.v)) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SparseGraph AugmentedGraphView::Materialize() const {
  const PairSet drop = MakePairSet(dropped);
  std::vector<NodePair> edges;
  edges.reserve(base->num_edges() + added.size());
  for (const NodePair& e : base->Edges()) {
    if (!drop.contains(PairKey(e))) edges.push_back(e);
  }
  edges.insert(edges.end(), added.begin(), added.end());
  return BuildCsr(base->num_nodes(), edges);
}

AugmentedGraphView EdgeDropout(std::shared_ptr<const SparseGraph> graph,
                               double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p < 1.0)) {
    ThrowUsage("edge dropout probability must be in [0, 1)");
  }
  AugmentedGraphView view;
  view.base = std::move(graph);
  if (p == 0.0) return view;
  Rng rng(DeriveSeed(seed, 0xd409));
  for (const NodePair& e : view.base->Edges()) {
    if (rng.Bernoulli(p)) view.dropped.push_back(e);
  }
  return view;
}

void AddEdges(AugmentedGraphView* view, std::span<const NodePair> pairs) {
  PairSet seen = MakePairSet(view->dropped);
  for (const NodePair& p : view->added) seen.insert(PairKey(p));
  for (const NodePair& p : pairs) {
    if (p.u == p.v || view->base->HasEdge(p.u, p.v)) continue;
    if (p.u >= view->base->num_nodes() || p.v >= view->base->num_nodes()) {
      ThrowUsage("augment: added pair out of range");
    }
    if (seen.insert(PairKey(p)).second) view->added.push_back(Canonical(p));
  }
}

PairSet MakePairSet(std::span<const NodePair> pairs) {
  PairSet set;
  set.reserve(pairs.size());
  for (const NodePair& p : pairs) set.insert(PairKey(p));
  return set;
}

std::vector<NodePair> SampleNegatives(const SparseGraph& graph,
                                      std::span<const NodePair> pos_pairs,
                                      std::size_t q, std::uint64_t seed,
                                      const PairSet& exclude) {
  constexpr int kMaxRejections = 1000;
  if (q < 1) ThrowUsage("negatives per positive must be >= 1");
  const std::size_t n = graph.num_nodes();
  const PairSet positives = MakePairSet(pos_pairs);
  Rng rng(DeriveSeed(seed, 0x4e67));

  std::vector<NodePair> out;
  out.reserve(pos_pairs.size() * q);
  for (const NodePair& pos : pos_pairs) {
    if (pos.u >= n || pos.v >= n) ThrowUsage("negative sampling: id out of range");
    for (std::size_t k = 0; k < q; ++k) {
      bool found = false;
      for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
        const auto cand = static_cast<NodeId>(rng.UniformInt(n));
        const std::uint64_t key = PairKey(pos.u, cand);
        if (cand == pos.u || graph.HasEdge(pos.u, cand) ||
            positives.contains(key) || exclude.contains(key)) {
          continue;
        }
        out.push_back({pos.u, cand});
        found = true;
        break;
      }
      if (!found) {
        ThrowData("negative sampling: no non-edge found for node " +
                  std::to_string(pos.u) + " after " +
                  std::to_string(kMaxRejections) +
                  " rejections (graph too dense)");
      }
    }
  }
  return out;
}

}  // namespace gidn
