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

#include "gidn/diffusion.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "gidn/error.h"

namespace gidn {

void ValidateBranch(const BranchConfig& branch) {
  if (branch.depth < 0) ThrowUsage("branch depth must be >= 0");
  if (branch.out_dim < 1) ThrowUsage("branch out_dim must be >= 1");
}

DiffusionStack Diffuse(const TransitionMatrix& transition, const Matrix& x,
                       int depth) {
  if (depth < 0) ThrowUsage("diffusion depth must be >= 0");
  if (x.rows() != transition.num_nodes()) {
    ThrowUsage("diffuse: feature rows " + std::to_string(x.rows()) +
               " != graph nodes " + std::to_string(transition.num_nodes()));
  }
  DiffusionStack stack;
  stack.hops.reserve(static_cast<std::size_t>(depth) + 1);
  stack.hops.push_back(x);
  for (int k = 1; k <= depth; ++k) {
    Matrix next;
    transition.Apply(stack.hops.back(), &next);
    stack.hops.push_back(std::move(next));
  }
  return stack;
}

Matrix DiffuseBackward(const TransitionMatrix& transition,
                       std::span<const Matrix> grad_per_hop) {
  if (grad_per_hop.empty()) ThrowUsage("diffuse_backward: no hop gradients");
  const Matrix& last = grad_per_hop.back();
  for (const Matrix& g : grad_per_hop) {
    if (g.rows() != transition.num_nodes() || g.rows() != last.rows() ||
        g.cols() != last.cols()) {
      ThrowUsage("diffuse_backward: hop gradient shape mismatch");
    }
  }
  Matrix acc = last;
  Matrix tmp;
  for (std::size_t k = grad_per_hop.size() - 1; k-- > 0;) {
    transition.ApplyTranspose(acc, &tmp);
    Axpy(1.0, grad_per_hop[k], &tmp);
    std::swap(acc, tmp);
  }
  return acc;
}

std::vector<double> Softmax(std::span<const double> logits) {
  std::vector<double> out(logits.size());
  if (logits.empty()) return out;
  const double peak = *std::max_element(logits.begin(), logits.end());
  double total = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - peak);
    total += out[i];
  }
  for (double& v : out) v /= total;
  return out;
}

Matrix HopWeights(const Matrix& logits) {
  Matrix weights(logits.rows(), logits.cols());
  std::vector<double> column(logits.rows());
  for (std::size_t c = 0; c < logits.cols(); ++c) {
    for (std::size_t k = 0; k < logits.rows(); ++k) column[k] = logits(k, c);
    const auto soft = Softmax(column);
    for (std::size_t k = 0; k < logits.rows(); ++k) weights(k, c) = soft[k];
  }
  return weights;
}

namespace {

void CheckLogits(const DiffusionStack& stack, const Matrix& logits) {
  if (stack.hops.empty()) ThrowUsage("hop_combine: empty stack");
  if (logits.rows() != stack.hops.size()) {
    ThrowUsage("hop_combine: " + std::to_string(logits.rows()) +
               " logits for " + std::to_string(stack.hops.size()) + " hops");
  }
  const std::size_t width = stack.hops.front().cols();
  if (logits.cols() != 1 && logits.cols() != width) {
    ThrowUsage("hop_combine: logits must have 1 or " + std::to_string(width) +
               " columns");
  }
}

}  // namespace

Matrix HopCombine(const DiffusionStack& stack, const Matrix& logits) {
  CheckLogits(stack, logits);
  const Matrix weights = HopWeights(logits);
  const bool shared = weights.cols() == 1;
  const Matrix& first = stack.hops.front();
  Matrix out(first.rows(), first.cols());
  for (std::size_t k = 0; k < stack.hops.size(); ++k) {
    const Matrix& hop = stack.hops[k];
    for (std::size_t i = 0; i < hop.rows(); ++i) {
      auto src = hop.row(i);
      auto dst = out.row(i);
      for (std::size_t c = 0; c < hop.cols(); ++c) {
        dst[c] += weights(k, shared ? 0 : c) * src[c];
      }
    }
  }
  return out;
}

Matrix HopCombine(const DiffusionStack& stack, std::span<const double> logits) {
  Matrix column(logits.size(), 1);
  std::copy(logits.begin(), logits.end(), column.values().begin());
  return HopCombine(stack, column);
}

HopCombineGrad HopCombineBackward(const DiffusionStack& stack,
                                  const Matrix& logits,
                                  const Matrix& grad_out) {
  CheckLogits(stack, logits);
  const Matrix weights = HopWeights(logits);
  const bool shared = weights.cols() == 1;
  const std::size_t hops = stack.hops.size();

  HopCombineGrad grad;
  grad.per_hop.reserve(hops);
  // dL/dweights, same shape as the logits.
  Matrix dweights(weights.rows(), weights.cols());
  for (std::size_t k = 0; k < hops; ++k) {
    const Matrix& hop = stack.hops[k];
    Matrix g(hop.rows(), hop.cols());
    for (std::size_t i = 0; i < hop.rows(); ++i) {
      auto go = grad_out.row(i);
      auto h = hop.row(i);
      auto gi = g.row(i);
      for (std::size_t c = 0; c < hop.cols(); ++c) {
        const std::size_t wc = shared ? 0 : c;
        gi[c] = weights(k, wc) * go[c];
        dweights(k, wc) += h[c] * go[c];
      }
    }
    grad.per_hop.push_back(std::move(g));
  }

  // Softmax Jacobian, per column: dtheta_k = a_k (dw_k - sum_j a_j dw_j).
  grad.logits = Matrix(logits.rows(), logits.cols());
  for (std::size_t c = 0; c < weights.cols(); ++c) {
    double mean = 0.0;
    for (std::size_t k = 0; k < hops; ++k) mean += weights(k, c) * dweights(k, c);
    for (std::size_t k = 0; k < hops; ++k) {
      grad.logits(k, c) = weights(k, c) * (dweights(k, c) - mean);
    }
  }
  return grad;
}

TransitionBank::TransitionBank(const SparseGraph& graph,
                               std::span<const BranchConfig> branches,
                               double self_loop_weight)
    : num_nodes_(graph.num_nodes()) {
  for (const BranchConfig& b : branches) {
    auto& slot = ops_[static_cast<std::size_t>(b.kind)];
    if (!slot) slot = BuildTransition(graph, b.kind, self_loop_weight);
  }
}

const TransitionMatrix& TransitionBank::Get(TransitionKind kind) const {
  const auto& slot = ops_[static_cast<std::size_t>(kind)];
  if (!slot) {
    ThrowUsage("transition bank has no '" +
               std::string(TransitionKindName(kind)) + "' operator");
  }
  return *slot;
}

namespace {

void CheckInception(const Matrix& x, std::span<const BranchConfig> branches,
                    std::span<const BranchParams> params) {
  if (branches.empty()) ThrowUsage("inception: branch list is empty");
  if (params.size() != branches.size()) {
    ThrowUsage("inception: " + std::to_string(params.size()) +
               " parameter sets for " + std::to_string(branches.size()) +
               " branches");
  }
  for (std::size_t b = 0; b < branches.size(); ++b) {
    ValidateBranch(branches[b]);
    const BranchParams& p = params[b];
    if (p.projection.rows() != x.cols() ||
        p.projection.cols() != branches[b].out_dim) {
      ThrowUsage("inception: branch " + std::to_string(b) +
                 " projection shape mismatch");
    }
    if (p.hop_logits.rows() !=
        static_cast<std::size_t>(branches[b].depth) + 1) {
      ThrowUsage("inception: branch " + std::to_string(b) +
                 " hop logit count mismatch");
    }
  }
}

}  // namespace

Matrix InceptionForward(const TransitionBank& bank, const Matrix& x,
                        std::span<const BranchConfig> branches,
                        std::span<const BranchParams> params,
                        InceptionCache* cache) {
  CheckInception(x, branches, params);
  std::size_t width = 0;
  for (const BranchConfig& b : branches) width += b.out_dim;

  Matrix out(x.rows(), width);
  if (cache) cache->stacks.clear();
  std::size_t offset = 0;
  for (std::size_t b = 0; b < branches.size(); ++b) {
    const TransitionMatrix& t = bank.Get(branches[b].kind);
    DiffusionStack stack =
        Diffuse(t, MatMul(x, params[b].projection), branches[b].depth);
    const Matrix z = HopCombine(stack, params[b].hop_logits);
    for (std::size_t i = 0; i < z.rows(); ++i) {
      std::copy(z.row(i).begin(), z.row(i).end(),
                out.row(i).begin() + static_cast<std::ptrdiff_t>(offset));
    }
    offset += branches[b].out_dim;
    if (cache) cache->stacks.push_back(std::move(stack));
  }
  return out;
}

Matrix InceptionForward(const SparseGraph& graph, const Matrix& x,
                        std::span<const BranchConfig> branches,
                        std::span<const BranchParams> params,
                        double self_loop_weight) {
  const TransitionBank bank(graph, branches, self_loop_weight);
  return InceptionForward(bank, x, branches, params);
}

Matrix InceptionBackward(const TransitionBank& bank, const Matrix& x,
                         std::span<const BranchConfig> branches,
                         std::span<const BranchParams> params,
                         const InceptionCache& cache, const Matrix& grad_out,
                         std::span<BranchParams> grads) {
  CheckInception(x, branches, params);
  if (cache.stacks.size() != branches.size() || grads.size() != params.size()) {
    ThrowUsage("inception backward: cache/gradient shape mismatch");
  }
  Matrix grad_x(x.rows(), x.cols());
  std::size_t offset = 0;
  for (std::size_t b = 0; b < branches.size(); ++b) {
    const Matrix grad_z = SliceCols(grad_out, offset, branches[b].out_dim);
    offset += branches[b].out_dim;

    HopCombineGrad hop_grad =
        HopCombineBackward(cache.stacks[b], params[b].hop_logits, grad_z);
    Axpy(1.0, hop_grad.logits, &grads[b].hop_logits);

    const Matrix grad_projected =
        DiffuseBackward(bank.Get(branches[b].kind), hop_grad.per_hop);
    Axpy(1.0, MatMulTransA(x, grad_projected), &grads[b].projection);
    Axpy(1.0, MatMulTransB(grad_projected, params[b].projection), &grad_x);
  }
  return grad_x;
}

}  // namespace gidn
