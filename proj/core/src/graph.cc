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

#include "gidn/graph.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "gidn/error.h"

namespace gidn {
namespace {

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) ThrowData("cannot open file: " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool ParseUnsigned(std::string_view token, std::uint64_t* out) {
  if (token.empty()) return false;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(),
                                   *out);
  return ec == std::errc() && ptr == token.data() + token.size();
}

std::vector<std::string_view> SplitWhitespace(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

}  // namespace

SparseGraph SparseGraph::FromCsr(std::size_t num_nodes,
                                 std::vector<std::size_t> row_offsets,
                                 std::vector<NodeId> col_targets) {
  if (row_offsets.size() != num_nodes + 1 || row_offsets.front() != 0 ||
      row_offsets.back() != col_targets.size()) {
    ThrowData("CSR: row_offsets shape mismatch");
  }
  for (std::size_t u = 0; u < num_nodes; ++u) {
    if (row_offsets[u] > row_offsets[u + 1]) {
      ThrowData("CSR: row_offsets decreasing at row " + std::to_string(u));
    }
    for (std::size_t p = row_offsets[u]; p < row_offsets[u + 1]; ++p) {
      if (col_targets[p] >= num_nodes) ThrowData("CSR: target out of range");
      if (col_targets[p] == u) ThrowData("CSR: stored self-loop");
      if (p > row_offsets[u] && col_targets[p - 1] >= col_targets[p]) {
        ThrowData("CSR: row " + std::to_string(u) + " not strictly sorted");
      }
    }
  }
  SparseGraph g;
  g.row_offsets_ = std::move(row_offsets);
  g.col_targets_ = std::move(col_targets);
  for (std::size_t u = 0; u < num_nodes; ++u) {
    for (NodeId v : g.neighbors(static_cast<NodeId>(u))) {
      if (!g.HasEdge(v, static_cast<NodeId>(u))) {
        ThrowData("CSR: arc (" + std::to_string(u) + "," + std::to_string(v) +
                  ") has no reverse");
      }
    }
  }
  return g;
}

bool SparseGraph::HasEdge(NodeId u, NodeId v) const {
  if (u >= num_nodes() || v >= num_nodes()) return false;
  auto row = neighbors(u);
  return std::binary_search(row.begin(), row.end(), v);
}

std::vector<NodePair> SparseGraph::Edges() const {
  std::vector<NodePair> out;
  out.reserve(num_edges());
  for (NodeId u = 0; u < num_nodes(); ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

EdgeList ParseEdgeList(std::string_view text, std::string_view source) {
  const std::string where =
      source.empty() ? std::string("edge list") : std::string(source);
  EdgeList result;
  bool declared = false;
  bool saw_content = false;
  std::uint64_t max_id = 0;
  bool any_id = false;
  std::unordered_set<std::uint64_t> seen;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = Trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;

    if (line.empty()) continue;
    if (line.front() == '#') {
      const std::string_view body = Trim(line.substr(1));
      if (line_no == 1 && body.starts_with("nodes=")) {
        std::uint64_t n = 0;
        if (!ParseUnsigned(Trim(body.substr(6)), &n)) {
          ThrowData(where + ":1: malformed nodes header");
        }
        result.num_nodes = n;
        declared = true;
        saw_content = true;
      }
      continue;
    }

    const auto tokens = SplitWhitespace(line);
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    if (tokens.size() != 2 || !ParseUnsigned(tokens[0], &a) ||
        !ParseUnsigned(tokens[1], &b) ||
        a > std::numeric_limits<NodeId>::max() - 1 ||
        b > std::numeric_limits<NodeId>::max() - 1) {
      ThrowData(where + ":" + std::to_string(line_no) + ": malformed line '" +
                std::string(line) + "'");
    }
    if (declared && (a >= result.num_nodes || b >= result.num_nodes)) {
      ThrowData(where + ":" + std::to_string(line_no) + ": node id " +
                std::to_string(std::max(a, b)) + " >= declared nodes=" +
                std::to_string(result.num_nodes));
    }
    saw_content = true;
    any_id = true;
    max_id = std::max({max_id, a, b});
    if (a == b) continue;
    const NodePair pair{static_cast<NodeId>(a), static_cast<NodeId>(b)};
    const std::uint64_t key = (a << 32) | b;
    if (seen.insert(key).second) result.edges.push_back(pair);
  }

  if (!saw_content) ThrowData(where + ": empty file");
  if (!declared) result.num_nodes = any_id ? max_id + 1 : 0;
  return result;
}

EdgeList ReadEdgeList(const std::filesystem::path& path) {
  return ParseEdgeList(ReadFile(path), path.string());
}

void WriteEdgeList(const std::filesystem::path& path, std::size_t num_nodes,
                   std::span<const NodePair> pairs) {
  std::ofstream out(path);
  if (!out) ThrowData("cannot write file: " + path.string());
  out << "# nodes=" << num_nodes << '\n';
  for (const NodePair& p : pairs) out << p.u << '\t' << p.v << '\n';
  if (!out) ThrowData("write failed: " + path.string());
}

SparseGraph BuildCsr(std::size_t num_nodes, std::span<const NodePair> edges) {
  std::vector<std::size_t> degree(num_nodes + 1, 0);
  for (const NodePair& e : edges) {
    if (e.u >= num_nodes || e.v >= num_nodes) {
      ThrowData("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                ") out of range for " + std::to_string(num_nodes) + " nodes");
    }
    if (e.u == e.v) continue;
    ++degree[e.u + 1];
    ++degree[e.v + 1];
  }
  std::vector<std::size_t> offsets(num_nodes + 1, 0);
  for (std::size_t u = 0; u < num_nodes; ++u) {
    offsets[u + 1] = offsets[u] + degree[u + 1];
  }
  std::vector<NodeId> cols(offsets.back());
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const NodePair& e : edges) {
    if (e.u == e.v) continue;
    cols[cursor[e.u]++] = e.v;
    cols[cursor[e.v]++] = e.u;
  }

  // Sort and deduplicate each row, then compact.
  std::vector<std::size_t> final_offsets(num_nodes + 1, 0);
  std::size_t write = 0;
  for (std::size_t u = 0; u < num_nodes; ++u) {
    auto first = cols.begin() + static_cast<std::ptrdiff_t>(offsets[u]);
    auto last = cols.begin() + static_cast<std::ptrdiff_t>(offsets[u + 1]);
    std::sort(first, last);
    last = std::unique(first, last);
    for (auto it = first; it != last; ++it) cols[write++] = *it;
    final_offsets[u + 1] = write;
  }
  cols.resize(write);

  return SparseGraph::FromCsr(num_nodes, std::move(final_offsets),
                              std::move(cols));
}

TransitionKind ParseTransitionKind(std::string_view name) {
  if (name == "rw") return TransitionKind::kRw;
  if (name == "sym") return TransitionKind::kSym;
  if (name == "adj") return TransitionKind::kAdj;
  ThrowUsage("unknown transition kind '" + std::string(name) +
             "' (expected rw|sym|adj)");
}

std::string_view TransitionKindName(TransitionKind kind) {
  switch (kind) {
    case TransitionKind::kRw:
      return "rw";
    case TransitionKind::kSym:
      return "sym";
    case TransitionKind::kAdj:
      return "adj";
  }
  return "?";
}

TransitionMatrix BuildTransition(const SparseGraph& graph, TransitionKind kind,
                                 double self_loop_weight) {
  if (!(self_loop_weight > 0.0) || !std::isfinite(self_loop_weight)) {
    ThrowUsage("self_loop_weight must be positive and finite");
  }
  const std::size_t n = graph.num_nodes();
  TransitionMatrix t;
  t.kind_ = kind;
  t.self_loop_weight_ = self_loop_weight;
  t.offsets_.assign(n + 1, 0);
  t.cols_.reserve(graph.num_arcs() + n);

  // Augmented structure: the self-loop is inserted at its sorted position.
  for (NodeId u = 0; u < n; ++u) {
    auto row = graph.neighbors(u);
    auto split = std::lower_bound(row.begin(), row.end(), u);
    t.cols_.insert(t.cols_.end(), row.begin(), split);
    t.cols_.push_back(u);
    t.cols_.insert(t.cols_.end(), split, row.end());
    t.offsets_[u + 1] = t.cols_.size();
  }

  std::vector<double> row_sum(n);
  std::vector<double> inv_sqrt(n);
  for (NodeId u = 0; u < n; ++u) {
    row_sum[u] = static_cast<double>(graph.degree(u)) + self_loop_weight;
    inv_sqrt[u] = 1.0 / std::sqrt(row_sum[u]);
  }

  t.values_.resize(t.cols_.size());
  for (NodeId u = 0; u < n; ++u) {
    for (std::size_t p = t.offsets_[u]; p < t.offsets_[u + 1]; ++p) {
      const NodeId v = t.cols_[p];
      const double a = (u == v) ? self_loop_weight : 1.0;
      double value = a;
      switch (kind) {
        case TransitionKind::kRw:
          value = a / row_sum[u];
          break;
        case TransitionKind::kSym:
          // Single commutative product keeps value(u,v) == value(v,u).
          value = (u == v) ? a * inv_sqrt[u] * inv_sqrt[u]
                           : inv_sqrt[u] * inv_sqrt[v];
          break;
        case TransitionKind::kAdj:
          break;
      }
      t.values_[p] = value;
    }
  }

  // The augmented pattern is symmetric, so T^T shares the structure.
  t.transpose_values_.resize(t.values_.size());
  for (NodeId u = 0; u < n; ++u) {
    for (std::size_t p = t.offsets_[u]; p < t.offsets_[u + 1]; ++p) {
      const NodeId v = t.cols_[p];
      auto first = t.cols_.begin() + static_cast<std::ptrdiff_t>(t.offsets_[v]);
      auto last =
          t.cols_.begin() + static_cast<std::ptrdiff_t>(t.offsets_[v + 1]);
      auto it = std::lower_bound(first, last, u);
      t.transpose_values_[p] =
          t.values_[static_cast<std::size_t>(it - t.cols_.begin())];
    }
  }
  return t;
}

double TransitionMatrix::Value(NodeId u, NodeId v) const {
  if (u >= num_nodes() || v >= num_nodes()) return 0.0;
  auto first = cols_.begin() + static_cast<std::ptrdiff_t>(offsets_[u]);
  auto last = cols_.begin() + static_cast<std::ptrdiff_t>(offsets_[u + 1]);
  auto it = std::lower_bound(first, last, v);
  if (it == last || *it != v) return 0.0;
  return values_[static_cast<std::size_t>(it - cols_.begin())];
}

namespace {

void SpMM(std::span<const std::size_t> offsets, std::span<const NodeId> cols,
          std::span<const double> values, const Matrix& x, Matrix* out) {
  const std::size_t n = offsets.size() - 1;
  if (x.rows() != n) {
    ThrowUsage("transition/feature dimension mismatch: " + std::to_string(n) +
               " nodes vs " + std::to_string(x.rows()) + " rows");
  }
  if (out->rows() != n || out->cols() != x.cols()) {
    *out = Matrix(n, x.cols());
  } else {
    out->SetZero();
  }
  const std::size_t d = x.cols();
  for (std::size_t u = 0; u < n; ++u) {
    auto dst = out->row(u);
    for (std::size_t p = offsets[u]; p < offsets[u + 1]; ++p) {
      const double w = values[p];
      auto src = x.row(cols[p]);
      for (std::size_t c = 0; c < d; ++c) dst[c] += w * src[c];
    }
  }
}

}  // namespace

void TransitionMatrix::Apply(const Matrix& x, Matrix* out) const {
  SpMM(offsets_, cols_, values_, x, out);
}

void TransitionMatrix::ApplyTranspose(const Matrix& x, Matrix* out) const {
  SpMM(offsets_, cols_, transpose_values_, x, out);
}

Matrix TransitionMatrix::ToDense() const {
  const std::size_t n = num_nodes();
  Matrix dense(n, n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t p = offsets_[u]; p < offsets_[u + 1]; ++p) {
      dense(u, cols_[p]) = values_[p];
    }
  }
  return dense;
}

FeatureMatrix ReadFeatures(const std::filesystem::path& path,
                           std::size_t num_nodes) {
  const std::string text = ReadFile(path);
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    std::vector<double> row;
    for (std::string_view tok : SplitWhitespace(trimmed)) {
      double value = 0.0;
      auto [ptr, ec] =
          std::from_chars(tok.data(), tok.data() + tok.size(), value);
      if (ec != std::errc() || ptr != tok.data() + tok.size() ||
          !std::isfinite(value)) {
        ThrowData(path.string() + ":" + std::to_string(line_no) +
                  ": malformed feature value '" + std::string(tok) + "'");
      }
      row.push_back(value);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      ThrowData(path.string() + ":" + std::to_string(line_no) +
                ": ragged feature row");
    }
    rows.push_back(std::move(row));
  }
  if (rows.size() != num_nodes) {
    ThrowData(path.string() + ": " + std::to_string(rows.size()) +
              " feature rows for " + std::to_string(num_nodes) + " nodes");
  }
  const std::size_t dim = rows.empty() ? 0 : rows.front().size();
  FeatureMatrix features(num_nodes, dim);
  for (std::size_t i = 0; i < num_nodes; ++i) {
    std::copy(rows[i].begin(), rows[i].end(), features.row(i).begin());
  }
  return features;
}

void ValidateSplits(const DatasetSplits& splits) {
  const auto check_range = [&](const std::vector<NodePair>& pairs,
                               const char* name) {
    for (const NodePair& p : pairs) {
      if (p.u >= splits.num_nodes || p.v >= splits.num_nodes) {
        ThrowData(std::string(name) + ": node id out of range (" +
                  std::to_string(std::max(p.u, p.v)) +
                  " >= " + std::to_string(splits.num_nodes) + ")");
      }
    }
  };
  check_range(splits.train_edges, "train");
  check_range(splits.valid_edges, "valid");
  check_range(splits.test_edges, "test");
  check_range(splits.valid_negatives, "valid_neg");
  check_range(splits.test_negatives, "test_neg");

  std::unordered_set<std::uint64_t> train;
  std::unordered_set<std::uint64_t> valid;
  for (const NodePair& p : splits.train_edges) train.insert(PairKey(p));
  for (const NodePair& p : splits.valid_edges) {
    if (train.contains(PairKey(p))) ThrowData("split overlap: train/valid");
    valid.insert(PairKey(p));
  }
  std::unordered_set<std::uint64_t> positives = train;
  positives.insert(valid.begin(), valid.end());
  for (const NodePair& p : splits.test_edges) {
    const auto key = PairKey(p);
    if (train.contains(key)) ThrowData("split overlap: train/test");
    if (valid.contains(key)) ThrowData("split overlap: valid/test");
    positives.insert(key);
  }
  for (const auto* negs : {&splits.valid_negatives, &splits.test_negatives}) {
    for (const NodePair& p : *negs) {
      if (positives.contains(PairKey(p))) {
        ThrowData("split overlap: negative pair (" + std::to_string(p.u) +
                  "," + std::to_string(p.v) + ") is a positive edge");
      }
    }
  }
}

DatasetSplits LoadSplits(const std::filesystem::path& dir) {
  const auto read_required = [&](const char* name) {
    const auto path = dir / name;
    if (!std::filesystem::exists(path)) {
      ThrowData("missing split file: " + path.string());
    }
    return ReadEdgeList(path);
  };
  const auto read_optional = [&](const char* name) {
    const auto path = dir / name;
    return std::filesystem::exists(path) ? ReadEdgeList(path) : EdgeList{};
  };
  EdgeList parts[5] = {read_required("train.tsv"), read_required("valid.tsv"),
                       read_required("test.tsv"), read_optional("valid_neg.tsv"),
                       read_optional("test_neg.tsv")};

  DatasetSplits splits;
  for (const EdgeList& part : parts) {
    splits.num_nodes = std::max(splits.num_nodes, part.num_nodes);
  }
  splits.train_edges = std::move(parts[0].edges);
  splits.valid_edges = std::move(parts[1].edges);
  splits.test_edges = std::move(parts[2].edges);
  splits.valid_negatives = std::move(parts[3].edges);
  splits.test_negatives = std::move(parts[4].edges);
  ValidateSplits(splits);
  return splits;
}

void WriteSplits(const std::filesystem::path& dir,
                 const DatasetSplits& splits) {
  std::filesystem::create_directories(dir);
  WriteEdgeList(dir / "train.tsv", splits.num_nodes, splits.train_edges);
  WriteEdgeList(dir / "valid.tsv", splits.num_nodes, splits.valid_edges);
  WriteEdgeList(dir / "test.tsv", splits.num_nodes, splits.test_edges);
  if (!splits.valid_negatives.empty()) {
    WriteEdgeList(dir / "valid_neg.tsv", splits.num_nodes,
                  splits.valid_negatives);
  }
  if (!splits.test_negatives.empty()) {
    WriteEdgeList(dir / "test_neg.tsv", splits.num_nodes,
                  splits.test_negatives);
  }
}

}  // namespace gidn
