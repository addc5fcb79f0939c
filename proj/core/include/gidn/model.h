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

#ifndef GIDN_MODEL_H_
#define GIDN_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gidn/diffusion.h"
#include "gidn/graph.h"
#include "gidn/matrix.h"

namespace gidn {

enum class InputMode { kFeatures, kEmbeddings, kBoth };
enum class HopWeighting { kScalar, kChannel };
enum class LossKind { kBce, kAuc };

InputMode ParseInputMode(std::string_view name);
std::string_view InputModeName(InputMode mode);
HopWeighting ParseHopWeighting(std::string_view name);
std::string_view HopWeightingName(HopWeighting mode);
LossKind ParseLossKind(std::string_view name);
std::string_view LossKindName(LossKind kind);

// Three shallow branches: (sym, K=1), (sym, K=2), (rw, K=3).
std::vector<BranchConfig> DefaultBranchBank(std::size_t width = 64);

struct ModelConfig {
  std::vector<BranchConfig> branches = DefaultBranchBank();
  InputMode input = InputMode::kEmbeddings;
  // Width of the external feature file; set from the data, 0 when absent.
  std::size_t feature_dim = 0;
  std::size_t embedding_dim = 256;
  std::size_t hidden = 256;
  HopWeighting hop_weights = HopWeighting::kScalar;
  LossKind loss = LossKind::kBce;
  double self_loop_weight = 1.0;

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

bool UsesFeatures(const ModelConfig& config);
bool UsesEmbeddings(const ModelConfig& config);
std::size_t InputDim(const ModelConfig& config);
std::size_t RepresentationDim(const ModelConfig& config);

struct ModelParams {
  std::vector<BranchParams> branches;
  Matrix mlp_w1;     // representation_dim x hidden
  Matrix mlp_b1;     // 1 x hidden
  Matrix mlp_w2;     // hidden x 1
  Matrix mlp_b2;     // 1 x 1
  Matrix embedding;  // num_nodes x embedding_dim, empty when unused

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

// Same shapes as ModelParams.
using GradientSet = ModelParams;

struct NamedTensor {
  std::string name;
  Matrix* tensor;
};
struct ConstNamedTensor {
  std::string name;
  const Matrix* tensor;
};

// Every tensor in declared order: branch_<b>.projection, branch_<b>.hop_logits
// for each branch, then mlp.w1, mlp.b1, mlp.w2, mlp.b2, embedding.
std::vector<NamedTensor> Tensors(ModelParams& params);
std::vector<ConstNamedTensor> Tensors(const ModelParams& params);

ModelParams ZerosLike(const ModelParams& params);

// Throws kUsage if params do not match the config and node count.
void ValidateParams(const ModelConfig& config, std::size_t num_nodes,
                    const ModelParams& params);

// Glorot-uniform projections and MLP weights, zero biases, zero hop logits,
// N(0, 1/d) embeddings. Fully determined by seed.
ModelParams InitParams(const ModelConfig& config, std::size_t num_nodes,
                       std::uint64_t seed);

double GlorotBound(std::size_t fan_in, std::size_t fan_out);

struct LinkBatch {
  std::vector<NodePair> pos_pairs;
  std::vector<NodePair> neg_pairs;
};

// Model input: [features | embedding] per the input mode.
Matrix BuildInput(const ModelConfig& config, const FeatureMatrix* features,
                  const ModelParams& params);

// score(u, v) = w2 . relu(W1^T (h_u * h_v) + b1) + b2.
std::vector<double> ScoreLinks(const Matrix& reps,
                               std::span<const NodePair> pairs,
                               const ModelParams& params);

// softplus(x) = max(x, 0) + log1p(exp(-|x|)).
double Softplus(double x);
double Sigmoid(double x);

// mean softplus(-s) over positives + mean softplus(s) over negatives; an
// empty side contributes zero.
double BceLoss(std::span<const double> pos_scores,
               std::span<const double> neg_scores);

// mean over (positive i, paired negative i*Q + q) of (1 - (s+ - s-))^2.
double AucLoss(std::span<const double> pos_scores,
               std::span<const double> neg_scores);

double Loss(LossKind kind, std::span<const double> pos_scores,
            std::span<const double> neg_scores);

struct ScoreGrad {
  double loss = 0.0;
  std::vector<double> pos;
  std::vector<double> neg;
};

ScoreGrad LossWithGrad(LossKind kind, std::span<const double> pos_scores,
                       std::span<const double> neg_scores);

struct ForwardState {
  Matrix input;
  InceptionCache cache;
  Matrix reps;
};

ForwardState Forward(const TransitionBank& bank, const FeatureMatrix* features,
                     const ModelConfig& config, const ModelParams& params);

Matrix ComputeRepresentations(const TransitionBank& bank,
                              const FeatureMatrix* features,
                              const ModelConfig& config,
                              const ModelParams& params);

struct BackwardResult {
  double loss = 0.0;
  GradientSet grads;
};

// Exact reverse-mode gradient of the batch loss w.r.t. every parameter.
BackwardResult Backward(const TransitionBank& bank,
                        const FeatureMatrix* features,
                        const ModelConfig& config, const ModelParams& params,
                        const LinkBatch& batch);

// As above, but reuses a forward state computed earlier (possibly with older
// parameters, which makes the result approximate).
BackwardResult BackwardFromState(const ForwardState& state,
                                 const TransitionBank& bank,
                                 const ModelConfig& config,
                                 const ModelParams& params,
                                 const LinkBatch& batch);

struct AdamHyper {
  double lr = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;

  friend bool operator==(const AdamHyper&, const AdamHyper&) = default;
};

struct AdamState {
  ModelParams m;
  ModelParams v;
  std::int64_t step = 0;
};

AdamState InitAdam(const ModelParams& params);

// Increments state->step to t and applies one bias-corrected Adam update.
// A non-finite gradient aborts the step before anything is modified.
void AdamStep(ModelParams* params, const GradientSet& grads, AdamState* state,
              const AdamHyper& hyper);

}  // namespace gidn

#endif  // GIDN_MODEL_H_
