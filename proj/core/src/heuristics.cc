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

#include "gidn/heuristics.h"

#include <cmath>
#include <string>
#include <unordered_map>

#include "gidn/error.h"

namespace gidn {
namespace {

void CheckNode(const SparseGraph& graph, NodeId u) {
  if (u >= graph.num_nodes()) {
    ThrowUsage("heuristic: node id " + std::to_string(u) + " out of range");
  }
}

template <typename Fn>
void ForEachCommon(const SparseGraph& graph, NodeId u, NodeId v, Fn&& fn) {
  CheckNode(graph, u);
  CheckNode(graph, v);
  auto a = graph.neighbors(u);
  auto b = graph.neighbors(v);
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      fn(a[i]);
      ++i;
      ++j;
    }
  }
}

}  // namespace

void ValidateHeuristic(const HeuristicKind& kind) {
  if (kind.type == HeuristicType::kRootedPageRank) {
    if (!(kind.alpha > 0.0 && kind.alpha < 1.0)) {
      ThrowUsage("rooted PageRank alpha must be in (0, 1)");
    }
    if (!(kind.tol > 0.0)) ThrowUsage("rooted PageRank tol must be > 0");
  }
  if (kind.type == HeuristicType::kSimRank) {
    if (!(kind.c > 0.0 && kind.c < 1.0)) {
      ThrowUsage("SimRank decay c must be in (0, 1)");
    }
    if (kind.iters < 1) ThrowUsage("SimRank iters must be >= 1");
  }
}

HeuristicType ParseHeuristicType(std::string_view name) {
  if (name == "cn") return HeuristicType::kCommonNeighbors;
  if (name == "aa") return HeuristicType::kAdamicAdar;
  if (name == "rpr") return HeuristicType::kRootedPageRank;
  if (name == "simrank") return HeuristicType::kSimRank;
  ThrowUsage("unknown heuristic '" + std::string(name) +
             "' (expected cn|aa|rpr|simrank)");
}

std::string_view HeuristicTypeName(HeuristicType type) {
  switch (type) {
    case HeuristicType::kCommonNeighbors:
      return "cn";
    case HeuristicType::kAdamicAdar:
      return "aa";
    case HeuristicType::kRootedPageRank:
      return "rpr";
    case HeuristicType::kSimRank:
      return "simrank";
  }
  return "?";
}

std::size_t CommonNeighbors(const SparseGraph& graph, NodeId u, NodeId v) {
  std::size_t count = 0;
  ForEachCommon(graph, u, v, [&](NodeId) { ++count; });
  return count;
}

double AdamicAdar(const SparseGraph& graph, NodeId u, NodeId v) {
  double score = 0.0;
  ForEachCommon(graph, u, v, [&](NodeId w) {
    const std::size_t d = graph.degree(w);
    if (d > 1) score += 1.0 / std::log(static_cast<double>(d));
  });
  return score;
}

std::vector<double> RootedPageRank(const SparseGraph& graph, NodeId root,
                                   double alpha, double tol) {
  constexpr int kMaxIterations = 10000;
  CheckNode(graph, root);
  if (!(alpha > 0.0 && alpha < 1.0)) {
    ThrowUsage("rooted PageRank alpha must be in (0, 1)");
  }
  const std::size_t n = graph.num_nodes();
  std::vector<double> pi(n, 0.0);
  std::vector<double> next(n);
  pi[root] = 1.0;
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    std::fill(next.begin(), next.end(), 0.0);
    double dangling = 0.0;
    for (NodeId u = 0; u < n; ++u) {
      if (pi[u] == 0.0) continue;
      const std::size_t d = graph.degree(u);
      if (d == 0) {
        dangling += pi[u];
        continue;
      }
      const double share = alpha * pi[u] / static_cast<double>(d);
      for (NodeId v : graph.neighbors(u)) next[v] += share;
    }
    next[root] += (1.0 - alpha) + alpha * dangling;
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) change += std::abs(next[i] - pi[i]);
    std::swap(pi, next);
    if (change < tol) return pi;
  }
  ThrowNumeric("rooted PageRank did not converge in " +
               std::to_string(kMaxIterations) + " iterations");
}

SimRankTable SimRank(const SparseGraph& graph, double c, int iters,
                     std::size_t node_cap) {
  if (!(c > 0.0 && c < 1.0)) ThrowUsage("SimRank decay c must be in (0, 1)");
  if (iters < 1) ThrowUsage("SimRank iters must be >= 1");
  const std::size_t n = graph.num_nodes();
  if (n > node_cap) {
    ThrowUsage("SimRank: graph has " + std::to_string(n) +
               " nodes, above the cap of " + std::to_string(node_cap));
  }
  std::vector<double> s(n * n, 0.0);
  for (std::size_t u = 0; u < n; ++u) s[u * n + u] = 1.0;

  std::vector<double> partial(n * n);
  std::vector<double> next(n * n);
  for (int it = 0; it < iters; ++it) {
    // partial[a, v] = sum_{b in N(v)} s[a, b]
    for (std::size_t a = 0; a < n; ++a) {
      for (NodeId v = 0; v < n; ++v) {
        double sum = 0.0;
        for (NodeId b : graph.neighbors(v)) sum += s[a * n + b];
        partial[a * n + v] = sum;
      }
    }
    // Upper triangle only, mirrored, so the table is exactly symmetric.
    for (NodeId u = 0; u < n; ++u) {
      next[u * n + u] = 1.0;
      const std::size_t du = graph.degree(u);
      for (NodeId v = u + 1; v < n; ++v) {
        const std::size_t dv = graph.degree(v);
        double value = 0.0;
        if (du > 0 && dv > 0) {
          double sum = 0.0;
          for (NodeId a : graph.neighbors(u)) sum += partial[a * n + v];
          value = c * sum / static_cast<double>(du * dv);
        }
        next[u * n + v] = value;
        next[v * n + u] = value;
      }
    }
    std::swap(s, next);
  }
  SimRankTable table;
  table.n_ = n;
  table.scores_ = std::move(s);
  return table;
}

std::vector<double> ScorePairs(const SparseGraph& graph,
                               const HeuristicKind& kind,
                               std::span<const NodePair> pairs) {
  ValidateHeuristic(kind);
  std::vector<double> scores(pairs.size());
  switch (kind.type) {
    case HeuristicType::kCommonNeighbors:
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        scores[i] = static_cast<double>(
            CommonNeighbors(graph, pairs[i].u, pairs[i].v));
      }
      break;
    case HeuristicType::kAdamicAdar:
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        scores[i] = AdamicAdar(graph, pairs[i].u, pairs[i].v);
      }
      break;
    case HeuristicType::kRootedPageRank: {
      std::unordered_map<NodeId, std::vector<double>> cache;
      const auto vec = [&](NodeId root) -> const std::vector<double>& {
        auto it = cache.find(root);
        if (it == cache.end()) {
          it = cache.emplace(root, RootedPageRank(graph, root, kind.alpha,
                                                  kind.tol))
                   .first;
        }
        return it->second;
      };
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        const NodePair p = pairs[i];
        CheckNode(graph, p.u);
        CheckNode(graph, p.v);
        const double forward = vec(p.u)[p.v];
        const double backward = vec(p.v)[p.u];
        scores[i] = forward + backward;
      }
      break;
    }
    case HeuristicType::kSimRank: {
      const SimRankTable table = SimRank(graph, kind.c, kind.iters);
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        CheckNode(graph, pairs[i].u);
        CheckNode(graph, pairs[i].v);
        scores[i] = table.Score(pairs[i].u, pairs[i].v);
      }
      break;
    }
  }
  return scores;
}

}  // namespace gidn
