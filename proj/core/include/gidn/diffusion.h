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

#ifndef GIDN_DIFFUSION_H_
#define GIDN_DIFFUSION_H_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gidn/graph.h"
#include "gidn/matrix.h"

namespace gidn {

// Per-hop feature matrices H(0..K) with H(k) = T * H(k-1). Row n across the
// hops is node n's per-hop neighbourhood summary.
struct DiffusionStack {
  std::vector<Matrix> hops;

  int depth() const { return static_cast<int>(hops.size()) - 1; }
};

// One inception branch: a transition kind (the feature space), a diffusion
// depth and the projected width.
struct BranchConfig {
  TransitionKind kind = TransitionKind::kSym;
  int depth = 1;
  std::size_t out_dim = 16;

  friend bool operator==(const BranchConfig&, const BranchConfig&) = default;
};

void ValidateBranch(const BranchConfig& branch);

// Trainable tensors of a single branch. hop_logits is (depth + 1) x C where
// C == 1 shares one weight per hop (scalar mode) and C == out_dim gives every
// channel its own hop distribution.
struct BranchParams {
  Matrix projection;  // d_in x out_dim
  Matrix hop_logits;  // (depth + 1) x C

  friend bool operator==(const BranchParams&, const BranchParams&) = default;
};

// H(0) = x, H(k) = T H(k-1); K sparse products, T^k is never formed.
DiffusionStack Diffuse(const TransitionMatrix& transition, const Matrix& x,
                       int depth);

// Returns sum_k (T^T)^k G(k), the adjoint of Diffuse applied to per-hop
// output gradients G(0..K), via g <- T^T g + G(k) from k = K down to 0.
Matrix DiffuseBackward(const TransitionMatrix& transition,
                       std::span<const Matrix> grad_per_hop);

std::vector<double> Softmax(std::span<const double> logits);

// Column-wise softmax over the hop axis.
Matrix HopWeights(const Matrix& logits);

// sum_k softmax(logits)_k H(k).
Matrix HopCombine(const DiffusionStack& stack, std::span<const double> logits);
Matrix HopCombine(const DiffusionStack& stack, const Matrix& logits);

struct HopCombineGrad {
  std::vector<Matrix> per_hop;  // dL/dH(k)
  Matrix logits;                // dL/dlogits
};

HopCombineGrad HopCombineBackward(const DiffusionStack& stack,
                                  const Matrix& logits,
                                  const Matrix& grad_out);

// Transition operators for the kinds a branch bank uses, built once per
// graph.
class TransitionBank {
 public:
  TransitionBank(const SparseGraph& graph,
                 std::span<const BranchConfig> branches,
                 double self_loop_weight = 1.0);

  const TransitionMatrix& Get(TransitionKind kind) const;
  std::size_t num_nodes() const { return num_nodes_; }

 private:
  std::size_t num_nodes_ = 0;
  std::array<std::optional<TransitionMatrix>, 3> ops_;
};

// Forward intermediates kept for the backward pass.
struct InceptionCache {
  std::vector<DiffusionStack> stacks;
};

// Z_b = HopCombine(Diffuse(T_b, x W_b, K_b), theta_b) for every branch,
// returned as [Z_1 | ... | Z_B].
Matrix InceptionForward(const TransitionBank& bank, const Matrix& x,
                        std::span<const BranchConfig> branches,
                        std::span<const BranchParams> params,
                        InceptionCache* cache = nullptr);

Matrix InceptionForward(const SparseGraph& graph, const Matrix& x,
                        std::span<const BranchConfig> branches,
                        std::span<const BranchParams> params,
                        double self_loop_weight = 1.0);

// Accumulates parameter gradients into grads (same shapes as params) and
// returns dL/dx.
Matrix InceptionBackward(const TransitionBank& bank, const Matrix& x,
                         std::span<const BranchConfig> branches,
                         std::span<const BranchParams> params,
                         const InceptionCache& cache, const Matrix& grad_out,
                         std::span<BranchParams> grads);

}  // namespace gidn

#endif  // GIDN_DIFFUSION_H_
