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

#ifndef GIDN_GRAPH_H_
#define GIDN_GRAPH_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gidn/matrix.h"

namespace gidn {

using NodeId = std::uint32_t;

struct NodePair {
  NodeId u = 0;
  NodeId v = 0;

  friend auto operator<=>(const NodePair&, const NodePair&) = default;
};

// (min, max) form of an unordered pair.
inline NodePair Canonical(NodePair p) {
  return p.u <= p.v ? p : NodePair{p.v, p.u};
}

// Order-independent 64-bit key of an unordered pair.
inline std::uint64_t PairKey(NodeId a, NodeId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}
inline std::uint64_t PairKey(NodePair p) { return PairKey(p.u, p.v); }

// Immutable undirected graph in compressed sparse row form. Every edge is
// stored as two arcs, rows are sorted and deduplicated, and no self-loop is
// stored.
class SparseGraph {
 public:
  SparseGraph() : row_offsets_(1, 0) {}

  // Validates the arrays against the CSR invariants; throws kData on
  // violation.
  static SparseGraph FromCsr(std::size_t num_nodes,
                             std::vector<std::size_t> row_offsets,
                             std::vector<NodeId> col_targets);

  std::size_t num_nodes() const { return row_offsets_.size() - 1; }
  std::size_t num_arcs() const { return col_targets_.size(); }
  std::size_t num_edges() const { return col_targets_.size() / 2; }
  bool undirected() const { return true; }

  std::span<const std::size_t> row_offsets() const { return row_offsets_; }
  std::span<const NodeId> col_targets() const { return col_targets_; }

  std::span<const NodeId> neighbors(NodeId u) const {
    return std::span<const NodeId>(col_targets_)
        .subspan(row_offsets_[u], row_offsets_[u + 1] - row_offsets_[u]);
  }
  std::size_t degree(NodeId u) const {
    return row_offsets_[u + 1] - row_offsets_[u];
  }

  bool HasEdge(NodeId u, NodeId v) const;

  // Each undirected edge once as (u, v) with u < v, in CSR order.
  std::vector<NodePair> Edges() const;

  friend bool operator==(const SparseGraph&, const SparseGraph&) = default;

 private:
  std::vector<std::size_t> row_offsets_;
  std::vector<NodeId> col_targets_;
};

struct EdgeList {
  std::size_t num_nodes = 0;
  std::vector<NodePair> edges;
};

// Reads "src<TAB>dst" lines. '#' lines are comments; a first line of the form
// "# nodes=N" declares the node count, otherwise it is max id + 1.
// Self-loops and exact duplicate lines are dropped (first occurrence kept).
EdgeList ReadEdgeList(const std::filesystem::path& path);
EdgeList ParseEdgeList(std::string_view text, std::string_view source = "");

void WriteEdgeList(const std::filesystem::path& path, std::size_t num_nodes,
                   std::span<const NodePair> pairs);

SparseGraph BuildCsr(std::size_t num_nodes, std::span<const NodePair> edges);

enum class TransitionKind { kRw, kSym, kAdj };

TransitionKind ParseTransitionKind(std::string_view name);
std::string_view TransitionKindName(TransitionKind kind);

// Normalized diffusion operator over A + w*I, stored on an augmented CSR that
// holds exactly one self-loop entry per node.
//
//   kRw:  D^-1 (A + wI)
//   kSym: D^-1/2 (A + wI) D^-1/2
//   kAdj: A + wI
//
// where D is the diagonal of row sums of A + wI.
class TransitionMatrix {
 public:
  TransitionKind kind() const { return kind_; }
  double self_loop_weight() const { return self_loop_weight_; }
  std::size_t num_nodes() const { return offsets_.size() - 1; }
  std::size_t nnz() const { return cols_.size(); }

  std::span<const std::size_t> offsets() const { return offsets_; }
  std::span<const NodeId> cols() const { return cols_; }
  std::span<const double> values() const { return values_; }

  // Entry (u, v), or 0 when not stored.
  double Value(NodeId u, NodeId v) const;

  // out = T * x. Each output row is accumulated in CSR order, so results do
  // not depend on how rows are scheduled.
  void Apply(const Matrix& x, Matrix* out) const;
  // out = T^T * x.
  void ApplyTranspose(const Matrix& x, Matrix* out) const;

  Matrix ToDense() const;

 private:
  friend TransitionMatrix BuildTransition(const SparseGraph&, TransitionKind,
                                          double);

  TransitionKind kind_ = TransitionKind::kSym;
  double self_loop_weight_ = 1.0;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> cols_;
  std::vector<double> values_;
  // transpose_values_[p] holds T(v, u) for the stored position p of (u, v).
  std::vector<double> transpose_values_;
};

TransitionMatrix BuildTransition(const SparseGraph& graph, TransitionKind kind,
                                 double self_loop_weight = 1.0);

// Whitespace-separated reals, one row per node; row count must equal
// num_nodes.
FeatureMatrix ReadFeatures(const std::filesystem::path& path,
                           std::size_t num_nodes);

struct DatasetSplits {
  std::size_t num_nodes = 0;
  std::vector<NodePair> train_edges;
  std::vector<NodePair> valid_edges;
  std::vector<NodePair> test_edges;
  std::vector<NodePair> valid_negatives;
  std::vector<NodePair> test_negatives;
};

// Throws kData on out-of-range ids, overlapping positive splits, or
// negatives that coincide with a positive.
void ValidateSplits(const DatasetSplits& splits);

// Reads train.tsv, valid.tsv, test.tsv and the optional valid_neg.tsv and
// test_neg.tsv from dir.
DatasetSplits LoadSplits(const std::filesystem::path& dir);
void WriteSplits(const std::filesystem::path& dir, const DatasetSplits& splits);

}  // namespace gidn

#endif  // GIDN_GRAPH_H_
