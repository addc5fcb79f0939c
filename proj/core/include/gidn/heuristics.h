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

#ifndef GIDN_HEURISTICS_H_
#define GIDN_HEURISTICS_H_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "gidn/graph.h"

namespace gidn {

enum class HeuristicType {
  kCommonNeighbors,
  kAdamicAdar,
  kRootedPageRank,
  kSimRank,
};

struct HeuristicKind {
  HeuristicType type = HeuristicType::kCommonNeighbors;
  // Rooted PageRank walk-continuation probability; restart is 1 - alpha.
  double alpha = 0.85;
  double tol = 1e-12;
  // SimRank decay and sweep count.
  double c = 0.8;
  int iters = 5;
};

void ValidateHeuristic(const HeuristicKind& kind);

// "cn", "aa", "rpr", "simrank".
HeuristicType ParseHeuristicType(std::string_view name);
std::string_view HeuristicTypeName(HeuristicType type);

// |N(u) & N(v)| by sorted-list intersection.
std::size_t CommonNeighbors(const SparseGraph& graph, NodeId u, NodeId v);

// Sum over common neighbours w of 1 / ln(deg w); degree <= 1 contributes 0.
double AdamicAdar(const SparseGraph& graph, NodeId u, NodeId v);

// Stationary vector of pi = (1 - alpha) e_root + alpha pi P, P the
// self-loop-free random-walk matrix; mass at dangling nodes returns to the
// root. Power iteration until the L1 change drops below tol; throws kNumeric
// after 10000 iterations.
std::vector<double> RootedPageRank(const SparseGraph& graph, NodeId root,
                                   double alpha, double tol = 1e-12);

inline constexpr std::size_t kSimRankNodeCap = 2000;

// Dense n x n SimRank table.
class SimRankTable {
 public:
  double Score(NodeId u, NodeId v) const { return scores_[u * n_ + v]; }
  std::size_t num_nodes() const { return n_; }

 private:
  friend SimRankTable SimRank(const SparseGraph&, double, int, std::size_t);
  std::size_t n_ = 0;
  std::vector<double> scores_;
};

// s(u,v) <- c / (deg u deg v) * sum_{a in N(u), b in N(v)} s(a,b), with
// s(u,u) = 1 and s0 = I. Throws kUsage when the graph exceeds node_cap.
SimRankTable SimRank(const SparseGraph& graph, double c, int iters,
                     std::size_t node_cap = kSimRankNodeCap);

// Scores every pair with the chosen heuristic. Rooted PageRank pairs score
// pi_u(v) + pi_v(u); per-root vectors are computed once.
std::vector<double> ScorePairs(const SparseGraph& graph,
                               const HeuristicKind& kind,
                               std::span<const NodePair> pairs);

}  // namespace gidn

#endif  // GIDN_HEURISTICS_H_
