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


#include "testing/oracles.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "gidn/diffusion.h"

namespace gidn::testing {

SparseGraph RandomGraph(Rng& rng, std::size_t n, double p) {
  std::vector<NodePair> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (rng.Bernoulli(p)) edges.push_back({u, v});
    }
  }
  return BuildCsr(n, edges);
}

SparseGraph RandomSparseGraph(Rng& rng, std::size_t n, double max_p) {
  return RandomGraph(rng, n, rng.Uniform(0.0, max_p));
}

Matrix RandomMatrix(Rng& rng, std::size_t rows, std::size_t cols,
                    double scale) {
  Matrix m(rows, cols);
  for (double& x : m.values()) x = scale * rng.Uniform(-1.0, 1.0);
  return m;
}

Eigen::MatrixXd ToEigen(const Matrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  }
  return out;
}

double MaxAbsDiff(const Eigen::MatrixXd& a, const Matrix& b) {
  if (static_cast<std::size_t>(a.rows()) != b.rows() ||
      static_cast<std::size_t>(a.cols()) != b.cols()) {
    return INFINITY;
  }
  double worst = 0.0;
  for (std::size_t r = 0; r < b.rows(); ++r) {
    for (std::size_t c = 0; c < b.cols(); ++c) {
      worst = std::max(worst, std::abs(a(r, c) - b(r, c)));
    }
  }
  return worst;
}

std::vector<std::vector<bool>> DenseAdjacency(const SparseGraph& graph) {
  const std::size_t n = graph.num_nodes();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (const NodePair& e : graph.Edges()) {
    adj[e.u][e.v] = true;
    adj[e.v][e.u] = true;
  }
  return adj;
}

Eigen::MatrixXd DenseTransition(const SparseGraph& graph, TransitionKind kind,
                                double self_loop_weight) {
  const auto adj = DenseAdjacency(graph);
  const auto n = static_cast<Eigen::Index>(graph.num_nodes());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (adj[i][j]) a(i, j) = 1.0;
    }
    a(i, i) += self_loop_weight;
  }
  const Eigen::VectorXd deg = a.rowwise().sum();
  Eigen::MatrixXd t(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      switch (kind) {
        case TransitionKind::kRw:
          t(i, j) = a(i, j) / deg(i);
          break;
        case TransitionKind::kSym:
          t(i, j) = a(i, j) / std::sqrt(deg(i) * deg(j));
          break;
        case TransitionKind::kAdj:
          t(i, j) = a(i, j);
          break;
      }
    }
  }
  return t;
}

std::vector<Eigen::MatrixXd> DensePowerDiffusion(const Eigen::MatrixXd& t,
                                                 const Eigen::MatrixXd& x,
                                                 int depth) {
  std::vector<Eigen::MatrixXd> out;
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(t.rows(), t.cols());
  for (int k = 0; k <= depth; ++k) {
    out.push_back(power * x);
    power = power * t;
  }
  return out;
}

double HitsOracle(std::span<const double> pos, std::span<const double> neg,
                  std::size_t k) {
  if (k >= neg.size()) return 1.0;
  std::size_t hits = 0;
  for (double p : pos) {
    std::size_t at_least = 0;
    for (double n : neg) at_least += n >= p ? 1 : 0;
    if (at_least < k) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(pos.size());
}

double MrrOracle(std::span<const double> pos, std::span<const double> neg) {
  double total = 0.0;
  for (double p : pos) {
    // (score, is_positive); descending score, negatives first on ties.
    std::vector<std::pair<double, int>> all;
    for (double n : neg) all.push_back({n, 0});
    all.push_back({p, 1});
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (all[i].second == 1) {
        total += 1.0 / static_cast<double>(i + 1);
        break;
      }
    }
  }
  return total / static_cast<double>(pos.size());
}

double AucOracle(std::span<const double> pos, std::span<const double> neg) {
  double wins = 0.0;
  for (double p : pos) {
    for (double n : neg) {
      if (p > n) {
        wins += 1.0;
      } else if (p == n) {
        wins += 0.5;
      }
    }
  }
  return wins / (static_cast<double>(pos.size()) *
                 static_cast<double>(neg.size()));
}

namespace {

std::set<NodeId> NeighborSet(const SparseGraph& graph, NodeId u) {
  std::set<NodeId> out;
  for (const NodePair& e : graph.Edges()) {
    if (e.u == u) out.insert(e.v);
    if (e.v == u) out.insert(e.u);
  }
  return out;
}

}  // namespace

std::size_t CommonNeighborsOracle(const SparseGraph& graph, NodeId u,
                                  NodeId v) {
  const auto a = NeighborSet(graph, u);
  const auto b = NeighborSet(graph, v);
  std::vector<NodeId> both;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(both));
  return both.size();
}

double AdamicAdarOracle(const SparseGraph& graph, NodeId u, NodeId v) {
  const auto a = NeighborSet(graph, u);
  const auto b = NeighborSet(graph, v);
  double score = 0.0;
  for (NodeId w : a) {
    if (!b.contains(w)) continue;
    const auto deg = NeighborSet(graph, w).size();
    if (deg > 1) score += 1.0 / std::log(static_cast<double>(deg));
  }
  return score;
}

std::vector<double> RootedPageRankOracle(const SparseGraph& graph,
                                         NodeId root, double alpha) {
  const auto adj = DenseAdjacency(graph);
  const auto n = static_cast<Eigen::Index>(graph.num_nodes());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double deg = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) deg += adj[i][j] ? 1.0 : 0.0;
    if (deg == 0.0) {
      p(i, root) = 1.0;
      continue;
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      if (adj[i][j]) p(i, j) = 1.0 / deg;
    }
  }
  const Eigen::MatrixXd lhs =
      Eigen::MatrixXd::Identity(n, n) - alpha * p.transpose();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs(root) = 1.0 - alpha;
  const Eigen::VectorXd pi = lhs.fullPivLu().solve(rhs);
  return std::vector<double>(pi.data(), pi.data() + n);
}

std::vector<std::vector<double>> SimRankOracle(const SparseGraph& graph,
                                               double c, int iters) {
  const std::size_t n = graph.num_nodes();
  std::vector<std::vector<NodeId>> nbr(n);
  for (const NodePair& e : graph.Edges()) {
    nbr[e.u].push_back(e.v);
    nbr[e.v].push_back(e.u);
  }
  std::vector<std::vector<double>> s(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) s[i][i] = 1.0;
  for (int it = 0; it < iters; ++it) {
    auto next = s;
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) {
        if (u == v) continue;
        if (nbr[u].empty() || nbr[v].empty()) {
          next[u][v] = 0.0;
          continue;
        }
        double sum = 0.0;
        for (NodeId a : nbr[u]) {
          for (NodeId b : nbr[v]) sum += s[a][b];
        }
        next[u][v] = c * sum /
                     static_cast<double>(nbr[u].size() * nbr[v].size());
      }
    }
    s = std::move(next);
  }
  return s;
}

MeanStd MeanStdOracle(std::span<const double> values) {
  long double sum = 0.0L;
  for (double v : values) sum += v;
  const long double mean = sum / static_cast<long double>(values.size());
  MeanStd out;
  out.mean = static_cast<double>(mean);
  if (values.size() > 1) {
    long double ss = 0.0L;
    for (double v : values) ss += (v - mean) * (v - mean);
    out.std = static_cast<double>(
        std::sqrt(ss / static_cast<long double>(values.size() - 1)));
  }
  return out;
}

GradInstance RandomGradInstance(std::uint64_t seed, std::size_t max_nodes) {
  Rng rng(DeriveSeed(seed, 0x6c3d));
  GradInstance inst;
  const std::size_t n = 4 + rng.UniformInt(max_nodes - 3);
  inst.graph = RandomGraph(rng, n, rng.Uniform(0.2, 0.6));

  ModelConfig& cfg = inst.config;
  cfg.branches.clear();
  const std::size_t num_branches = 1 + rng.UniformInt(2);
  for (std::size_t b = 0; b < num_branches; ++b) {
    BranchConfig br;
    br.kind = static_cast<TransitionKind>(rng.UniformInt(3));
    br.depth = static_cast<int>(rng.UniformInt(3));
    br.out_dim = 1 + rng.UniformInt(4);
    cfg.branches.push_back(br);
  }
  cfg.input = static_cast<InputMode>(rng.UniformInt(3));
  cfg.embedding_dim = 1 + rng.UniformInt(4);
  cfg.hidden = 1 + rng.UniformInt(4);
  cfg.hop_weights = static_cast<HopWeighting>(rng.UniformInt(2));
  cfg.loss = static_cast<LossKind>(rng.UniformInt(2));
  const double loops[] = {1.0, 0.5, 2.0};
  cfg.self_loop_weight = loops[rng.UniformInt(3)];
  if (UsesFeatures(cfg)) {
    cfg.feature_dim = 1 + rng.UniformInt(4);
    inst.features = RandomMatrix(rng, n, cfg.feature_dim);
  }

  inst.params = InitParams(cfg, n, seed);
  // Move every tensor off its structured init so no gradient vanishes by
  // symmetry (zero logits, zero biases).
  for (auto& t : Tensors(inst.params)) {
    for (double& x : t.tensor->values()) x = rng.Uniform(-1.0, 1.0);
  }

  const std::size_t num_pos = 1 + rng.UniformInt(6);
  const std::size_t q = 1 + rng.UniformInt(2);
  auto random_pair = [&] {
    const auto u = static_cast<NodeId>(rng.UniformInt(n));
    auto v = static_cast<NodeId>(rng.UniformInt(n - 1));
    if (v >= u) ++v;
    return NodePair{u, v};
  };
  for (std::size_t i = 0; i < num_pos; ++i) {
    inst.batch.pos_pairs.push_back(random_pair());
  }
  for (std::size_t i = 0; i < num_pos * q; ++i) {
    inst.batch.neg_pairs.push_back(random_pair());
  }
  return inst;
}

double InstanceLoss(const GradInstance& instance, const ModelParams& params) {
  const TransitionBank bank(instance.graph, instance.config.branches,
                            instance.config.self_loop_weight);
  const FeatureMatrix* features =
      instance.features.empty() ? nullptr : &instance.features;
  const Matrix reps =
      ComputeRepresentations(bank, features, instance.config, params);
  const auto pos = ScoreLinks(reps, instance.batch.pos_pairs, params);
  const auto neg = ScoreLinks(reps, instance.batch.neg_pairs, params);
  return Loss(instance.config.loss, pos, neg);
}

std::vector<GroupError> GradientCheck(const GradInstance& instance, double h) {
  const TransitionBank bank(instance.graph, instance.config.branches,
                            instance.config.self_loop_weight);
  const FeatureMatrix* features =
      instance.features.empty() ? nullptr : &instance.features;
  const BackwardResult analytic = Backward(bank, features, instance.config,
                                           instance.params, instance.batch);

  ModelParams probe = instance.params;
  auto probe_tensors = Tensors(probe);
  const auto grad_tensors = Tensors(analytic.grads);
  std::vector<GroupError> out;
  for (std::size_t t = 0; t < probe_tensors.size(); ++t) {
    auto values = probe_tensors[t].tensor->values();
    const auto grads = grad_tensors[t].tensor->values();
    double diff = 0.0;
    double scale = 1e-6;
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double saved = values[i];
      values[i] = saved + h;
      const double up = InstanceLoss(instance, probe);
      values[i] = saved - h;
      const double down = InstanceLoss(instance, probe);
      values[i] = saved;
      const double numeric = (up - down) / (2.0 * h);
      diff = std::max(diff, std::abs(numeric - grads[i]));
      scale = std::max({scale, std::abs(numeric), std::abs(grads[i])});
    }
    out.push_back({probe_tensors[t].name, diff / scale});
  }
  return out;
}

}  // namespace gidn::testing
