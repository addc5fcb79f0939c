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

#include "gidn/model.h"

#include <algorithm>
#include <cmath>

#include "gidn/error.h"
#include "gidn/rng.h"

namespace gidn {

InputMode ParseInputMode(std::string_view name) {
  if (name == "features") return InputMode::kFeatures;
  if (name == "embeddings") return InputMode::kEmbeddings;
  if (name == "both") return InputMode::kBoth;
  ThrowUsage("unknown input mode '" + std::string(name) +
             "' (expected features|embeddings|both)");
}

std::string_view InputModeName(InputMode mode) {
  switch (mode) {
    case InputMode::kFeatures:
      return "features";
    case InputMode::kEmbeddings:
      return "embeddings";
    case InputMode::kBoth:
      return "both";
  }
  return "?";
}

HopWeighting ParseHopWeighting(std::string_view name) {
  if (name == "scalar") return HopWeighting::kScalar;
  if (name == "channel") return HopWeighting::kChannel;
  ThrowUsage("unknown hop_weights '" + std::string(name) +
             "' (expected scalar|channel)");
}

std::string_view HopWeightingName(HopWeighting mode) {
  return mode == HopWeighting::kScalar ? "scalar" : "channel";
}

LossKind ParseLossKind(std::string_view name) {
  if (name == "bce") return LossKind::kBce;
  if (name == "auc") return LossKind::kAuc;
  ThrowUsage("unknown loss '" + std::string(name) + "' (expected bce|auc)");
}

std::string_view LossKindName(LossKind kind) {
  return kind == LossKind::kBce ? "bce" : "auc";
}

std::vector<BranchConfig> DefaultBranchBank(std::size_t width) {
  return {{TransitionKind::kSym, 1, width},
          {TransitionKind::kSym, 2, width},
          {TransitionKind::kRw, 3, width}};
}

bool UsesFeatures(const ModelConfig& config) {
  return config.input != InputMode::kEmbeddings;
}

bool UsesEmbeddings(const ModelConfig& config) {
  return config.input != InputMode::kFeatures;
}

std::size_t InputDim(const ModelConfig& config) {
  return (UsesFeatures(config) ? config.feature_dim : 0) +
         (UsesEmbeddings(config) ? config.embedding_dim : 0);
}

std::size_t RepresentationDim(const ModelConfig& config) {
  std::size_t width = 0;
  for (const BranchConfig& b : config.branches) width += b.out_dim;
  return width;
}

std::vector<NamedTensor> Tensors(ModelParams& params) {
  std::vector<NamedTensor> out;
  for (std::size_t b = 0; b < params.branches.size(); ++b) {
    const std::string prefix = "branch_" + std::to_string(b);
    out.push_back({prefix + ".projection", &params.branches[b].projection});
    out.push_back({prefix + ".hop_logits", &params.branches[b].hop_logits});
  }
  out.push_back({"mlp.w1", &params.mlp_w1});
  out.push_back({"mlp.b1", &params.mlp_b1});
  out.push_back({"mlp.w2", &params.mlp_w2});
  out.push_back({"mlp.b2", &params.mlp_b2});
  out.push_back({"embedding", &params.embedding});
  return out;
}

std::vector<ConstNamedTensor> Tensors(const ModelParams& params) {
  std::vector<ConstNamedTensor> out;
  for (auto& t : Tensors(const_cast<ModelParams&>(params))) {
    out.push_back({std::move(t.name), t.tensor});
  }
  return out;
}

ModelParams ZerosLike(const ModelParams& params) {
  ModelParams zeros = params;
  for (auto& t : Tensors(zeros)) t.tensor->SetZero();
  return zeros;
}

void ValidateParams(const ModelConfig& config, std::size_t num_nodes,
                    const ModelParams& params) {
  if (config.branches.empty()) ThrowUsage("model: branch list is empty");
  if (config.hidden < 1) ThrowUsage("model: hidden must be >= 1");
  if (InputDim(config) == 0) ThrowUsage("model: input dimension is zero");
  if (params.branches.size() != config.branches.size()) {
    ThrowUsage("model: branch count mismatch");
  }
  const auto expect = [](const Matrix& m, std::size_t r, std::size_t c,
                         const std::string& name) {
    if (m.rows() != r || m.cols() != c) {
      ThrowUsage("model: tensor " + name + " has shape " +
                 std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                 ", expected " + std::to_string(r) + "x" + std::to_string(c));
    }
  };
  const std::size_t d_in = InputDim(config);
  for (std::size_t b = 0; b < config.branches.size(); ++b) {
    const BranchConfig& bc = config.branches[b];
    ValidateBranch(bc);
    expect(params.branches[b].projection, d_in, bc.out_dim,
           "branch projection");
    expect(params.branches[b].hop_logits,
           static_cast<std::size_t>(bc.depth) + 1,
           config.hop_weights == HopWeighting::kScalar ? 1 : bc.out_dim,
           "branch hop_logits");
  }
  const std::size_t rep = RepresentationDim(config);
  expect(params.mlp_w1, rep, config.hidden, "mlp.w1");
  expect(params.mlp_b1, 1, config.hidden, "mlp.b1");
  expect(params.mlp_w2, config.hidden, 1, "mlp.w2");
  expect(params.mlp_b2, 1, 1, "mlp.b2");
  if (UsesEmbeddings(config)) {
    expect(params.embedding, num_nodes, config.embedding_dim, "embedding");
  } else if (!params.embedding.empty()) {
    ThrowUsage("model: embedding present but input mode is features");
  }
}

double GlorotBound(std::size_t fan_in, std::size_t fan_out) {
  return std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
}

namespace {

Matrix GlorotUniform(std::size_t rows, std::size_t cols, Rng* rng) {
  const double a = GlorotBound(rows, cols);
  Matrix m(rows, cols);
  for (double& x : m.values()) x = rng->Uniform(-a, a);
  return m;
}

}  // namespace

ModelParams InitParams(const ModelConfig& config, std::size_t num_nodes,
                       std::uint64_t seed) {
  if (config.branches.empty()) ThrowUsage("model: branch list is empty");
  for (const BranchConfig& b : config.branches) ValidateBranch(b);
  const std::size_t d_in = InputDim(config);
  if (d_in == 0) ThrowUsage("model: input dimension is zero");

  Rng rng(DeriveSeed(seed, 0x1417));
  ModelParams params;
  for (const BranchConfig& b : config.branches) {
    BranchParams bp;
    bp.projection = GlorotUniform(d_in, b.out_dim, &rng);
    bp.hop_logits =
        Matrix(static_cast<std::size_t>(b.depth) + 1,
               config.hop_weights == HopWeighting::kScalar ? 1 : b.out_dim);
    params.branches.push_back(std::move(bp));
  }
  const std::size_t rep = RepresentationDim(config);
  params.mlp_w1 = GlorotUniform(rep, config.hidden, &rng);
  params.mlp_b1 = Matrix(1, config.hidden);
  params.mlp_w2 = GlorotUniform(config.hidden, 1, &rng);
  params.mlp_b2 = Matrix(1, 1);
  if (UsesEmbeddings(config)) {
    const double scale =
        1.0 / std::sqrt(static_cast<double>(config.embedding_dim));
    params.embedding = Matrix(num_nodes, config.embedding_dim);
    for (double& x : params.embedding.values()) x = scale * rng.Normal();
  }
  return params;
}

Matrix BuildInput(const ModelConfig& config, const FeatureMatrix* features,
                  const ModelParams& params) {
  if (UsesFeatures(config)) {
    if (features == nullptr || features->cols() != config.feature_dim) {
      ThrowUsage("model: input mode '" +
                 std::string(InputModeName(config.input)) +
                 "' needs a feature matrix of width " +
                 std::to_string(config.feature_dim));
    }
  }
  switch (config.input) {
    case InputMode::kFeatures:
      return *features;
    case InputMode::kEmbeddings:
      return params.embedding;
    case InputMode::kBoth:
      if (features->rows() != params.embedding.rows()) {
        ThrowUsage("model: feature and embedding row counts differ");
      }
      return ConcatCols(*features, params.embedding);
  }
  return {};
}

namespace {

struct PairActivations {
  std::vector<double> x;    // h_u * h_v
  std::vector<double> pre;  // W1^T x + b1
  double score = 0.0;
};

void ScorePair(const Matrix& reps, NodePair pair, const ModelParams& params,
               PairActivations* act) {
  const std::size_t dim = reps.cols();
  const std::size_t hidden = params.mlp_b1.cols();
  act->x.resize(dim);
  act->pre.assign(params.mlp_b1.values().begin(), params.mlp_b1.values().end());
  auto hu = reps.row(pair.u);
  auto hv = reps.row(pair.v);
  for (std::size_t c = 0; c < dim; ++c) act->x[c] = hu[c] * hv[c];
  for (std::size_t c = 0; c < dim; ++c) {
    const double xc = act->x[c];
    if (xc == 0.0) continue;
    auto w = params.mlp_w1.row(c);
    for (std::size_t j = 0; j < hidden; ++j) act->pre[j] += xc * w[j];
  }
  double s = params.mlp_b2(0, 0);
  for (std::size_t j = 0; j < hidden; ++j) {
    if (act->pre[j] > 0.0) s += act->pre[j] * params.mlp_w2(j, 0);
  }
  act->score = s;
}

void CheckPairs(const Matrix& reps, std::span<const NodePair> pairs,
                const ModelParams& params) {
  if (reps.cols() != params.mlp_w1.rows()) {
    ThrowUsage("score_links: representation width " +
               std::to_string(reps.cols()) + " != MLP input width " +
               std::to_string(params.mlp_w1.rows()));
  }
  for (const NodePair& p : pairs) {
    if (p.u >= reps.rows() || p.v >= reps.rows()) {
      ThrowUsage("score_links: node id out of range (" +
                 std::to_string(std::max(p.u, p.v)) + ")");
    }
  }
}

}  // namespace

std::vector<double> ScoreLinks(const Matrix& reps,
                               std::span<const NodePair> pairs,
                               const ModelParams& params) {
  CheckPairs(reps, pairs, params);
  std::vector<double> scores(pairs.size());
  PairActivations act;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    ScorePair(reps, pairs[i], params, &act);
    scores[i] = act.score;
  }
  return scores;
}

double Softplus(double x) {
  return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

double Sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double BceLoss(std::span<const double> pos_scores,
               std::span<const double> neg_scores) {
  return LossWithGrad(LossKind::kBce, pos_scores, neg_scores).loss;
}

double AucLoss(std::span<const double> pos_scores,
               std::span<const double> neg_scores) {
  return LossWithGrad(LossKind::kAuc, pos_scores, neg_scores).loss;
}

double Loss(LossKind kind, std::span<const double> pos_scores,
            std::span<const double> neg_scores) {
  return LossWithGrad(kind, pos_scores, neg_scores).loss;
}

ScoreGrad LossWithGrad(LossKind kind, std::span<const double> pos_scores,
                       std::span<const double> neg_scores) {
  ScoreGrad out;
  out.pos.assign(pos_scores.size(), 0.0);
  out.neg.assign(neg_scores.size(), 0.0);
  if (kind == LossKind::kBce) {
    if (pos_scores.empty() && neg_scores.empty()) {
      ThrowUsage("bce_loss: no scores");
    }
    if (!pos_scores.empty()) {
      const double inv = 1.0 / static_cast<double>(pos_scores.size());
      double sum = 0.0;
      for (std::size_t i = 0; i < pos_scores.size(); ++i) {
        sum += Softplus(-pos_scores[i]);
        out.pos[i] = -Sigmoid(-pos_scores[i]) * inv;
      }
      out.loss += sum * inv;
    }
    if (!neg_scores.empty()) {
      const double inv = 1.0 / static_cast<double>(neg_scores.size());
      double sum = 0.0;
      for (std::size_t i = 0; i < neg_scores.size(); ++i) {
        sum += Softplus(neg_scores[i]);
        out.neg[i] = Sigmoid(neg_scores[i]) * inv;
      }
      out.loss += sum * inv;
    }
    return out;
  }

  if (pos_scores.empty() || neg_scores.empty() ||
      neg_scores.size() % pos_scores.size() != 0) {
    ThrowUsage("auc_loss: need Q >= 1 negatives per positive");
  }
  const std::size_t q = neg_scores.size() / pos_scores.size();
  const double inv = 1.0 / static_cast<double>(neg_scores.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < pos_scores.size(); ++i) {
    for (std::size_t k = 0; k < q; ++k) {
      const std::size_t j = i * q + k;
      const double margin = 1.0 - (pos_scores[i] - neg_scores[j]);
      sum += margin * margin;
      out.pos[i] -= 2.0 * margin * inv;
      out.neg[j] += 2.0 * margin * inv;
    }
  }
  out.loss = sum * inv;
  return out;
}

ForwardState Forward(const TransitionBank& bank, const FeatureMatrix* features,
                     const ModelConfig& config, const ModelParams& params) {
  ValidateParams(config, bank.num_nodes(), params);
  ForwardState state;
  state.input = BuildInput(config, features, params);
  if (state.input.rows() != bank.num_nodes()) {
    ThrowUsage("model: input rows " + std::to_string(state.input.rows()) +
               " != graph nodes " + std::to_string(bank.num_nodes()));
  }
  state.reps = InceptionForward(bank, state.input, config.branches,
                                params.branches, &state.cache);
  return state;
}

Matrix ComputeRepresentations(const TransitionBank& bank,
                              const FeatureMatrix* features,
                              const ModelConfig& config,
                              const ModelParams& params) {
  return Forward(bank, features, config, params).reps;
}

BackwardResult BackwardFromState(const ForwardState& state,
                                 const TransitionBank& bank,
                                 const ModelConfig& config,
                                 const ModelParams& params,
                                 const LinkBatch& batch) {
  const Matrix& reps = state.reps;
  CheckPairs(reps, batch.pos_pairs, params);
  CheckPairs(reps, batch.neg_pairs, params);

  const std::size_t n_pos = batch.pos_pairs.size();
  std::vector<NodePair> pairs = batch.pos_pairs;
  pairs.insert(pairs.end(), batch.neg_pairs.begin(), batch.neg_pairs.end());

  // Forward through the decoder, keeping activations per link.
  std::vector<PairActivations> acts(pairs.size());
  std::vector<double> pos_scores(n_pos);
  std::vector<double> neg_scores(pairs.size() - n_pos);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    ScorePair(reps, pairs[i], params, &acts[i]);
    (i < n_pos ? pos_scores[i] : neg_scores[i - n_pos]) = acts[i].score;
  }
  const ScoreGrad sg = LossWithGrad(config.loss, pos_scores, neg_scores);

  BackwardResult result;
  result.loss = sg.loss;
  result.grads = ZerosLike(params);
  GradientSet& g = result.grads;

  const std::size_t dim = reps.cols();
  const std::size_t hidden = config.hidden;
  Matrix grad_reps(reps.rows(), dim);
  std::vector<double> dpre(hidden);
  std::vector<double> dx(dim);
  // Links are reduced in index order so the sum is reproducible.
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const double ds = i < n_pos ? sg.pos[i] : sg.neg[i - n_pos];
    if (ds == 0.0) continue;
    const PairActivations& act = acts[i];
    g.mlp_b2(0, 0) += ds;
    for (std::size_t j = 0; j < hidden; ++j) {
      const bool active = act.pre[j] > 0.0;
      if (active) g.mlp_w2(j, 0) += ds * act.pre[j];
      dpre[j] = active ? ds * params.mlp_w2(j, 0) : 0.0;
      g.mlp_b1(0, j) += dpre[j];
    }
    for (std::size_t c = 0; c < dim; ++c) {
      auto w = params.mlp_w1.row(c);
      auto gw = g.mlp_w1.row(c);
      const double xc = act.x[c];
      double acc = 0.0;
      for (std::size_t j = 0; j < hidden; ++j) {
        gw[j] += xc * dpre[j];
        acc += w[j] * dpre[j];
      }
      dx[c] = acc;
    }
    const NodePair p = pairs[i];
    auto hu = reps.row(p.u);
    auto hv = reps.row(p.v);
    auto gu = grad_reps.row(p.u);
    for (std::size_t c = 0; c < dim; ++c) gu[c] += dx[c] * hv[c];
    auto gv = grad_reps.row(p.v);
    for (std::size_t c = 0; c < dim; ++c) gv[c] += dx[c] * hu[c];
  }

  const Matrix grad_input =
      InceptionBackward(bank, state.input, config.branches, params.branches,
                        state.cache, grad_reps, g.branches);
  if (UsesEmbeddings(config)) {
    const std::size_t offset = UsesFeatures(config) ? config.feature_dim : 0;
    g.embedding = SliceCols(grad_input, offset, config.embedding_dim);
  }
  return result;
}

BackwardResult Backward(const TransitionBank& bank,
                        const FeatureMatrix* features,
                        const ModelConfig& config, const ModelParams& params,
                        const LinkBatch& batch) {
  const ForwardState state = Forward(bank, features, config, params);
  return BackwardFromState(state, bank, config, params, batch);
}

AdamState InitAdam(const ModelParams& params) {
  return AdamState{ZerosLike(params), ZerosLike(params), 0};
}

void AdamStep(ModelParams* params, const GradientSet& grads, AdamState* state,
              const AdamHyper& hyper) {
  auto p = Tensors(*params);
  auto g = Tensors(grads);
  auto m = Tensors(state->m);
  auto v = Tensors(state->v);
  if (p.size() != g.size() || p.size() != m.size()) {
    ThrowUsage("adam: parameter/gradient structure mismatch");
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i].tensor->size() != g[i].tensor->size() ||
        p[i].tensor->size() != m[i].tensor->size()) {
      ThrowUsage("adam: shape mismatch for " + p[i].name);
    }
    if (!g[i].tensor->AllFinite()) {
      ThrowNumeric("adam: non-finite gradient in " + p[i].name);
    }
  }

  state->step += 1;
  const double t = static_cast<double>(state->step);
  const double c1 = 1.0 - std::pow(hyper.beta1, t);
  const double c2 = 1.0 - std::pow(hyper.beta2, t);
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto pv = p[i].tensor->values();
    auto gv = g[i].tensor->values();
    auto mv = m[i].tensor->values();
    auto vv = v[i].tensor->values();
    for (std::size_t j = 0; j < pv.size(); ++j) {
      mv[j] = hyper.beta1 * mv[j] + (1.0 - hyper.beta1) * gv[j];
      vv[j] = hyper.beta2 * vv[j] + (1.0 - hyper.beta2) * gv[j] * gv[j];
      const double m_hat = mv[j] / c1;
      const double v_hat = vv[j] / c2;
      pv[j] -= hyper.lr * m_hat / (std::sqrt(v_hat) + hyper.eps);
    }
  }
}

}  // namespace gidn
