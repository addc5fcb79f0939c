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

#ifndef GIDN_CONFIG_H_
#define GIDN_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "gidn/model.h"

namespace gidn {

struct DataConfig {
  std::string splits_dir;
  // Optional node feature file; empty means none.
  std::string features;
  // 0 infers the node count from the split files.
  std::size_t num_nodes = 0;
  // Adds validation edges to the graph used for test-time diffusion.
  bool merge_valid_into_graph = false;
  // Evaluation negatives sampled per positive when valid_neg.tsv /
  // test_neg.tsv are absent.
  std::size_t eval_neg_per_pos = 1;
  // Seed for sampled evaluation negatives; shared by all runs.
  std::uint64_t negative_seed = 12345;

  friend bool operator==(const DataConfig&, const DataConfig&) = default;
};

struct AugmentConfig {
  bool enabled = false;
  std::size_t walk_length = 10;
  std::size_t walks_per_node = 5;
  std::size_t window = 3;
  std::size_t tau = 3;
  double dropout = 0.05;

  friend bool operator==(const AugmentConfig&, const AugmentConfig&) = default;
};

enum class RefreshMode { kStep, kEpoch };

struct TrainConfig {
  int epochs = 100;
  std::size_t batch_size = 1024;
  int eval_every = 1;
  // Negatives per positive (Q).
  std::size_t negatives = 1;
  // kStep recomputes representations after every update (exact gradients);
  // kEpoch reuses one forward pass per epoch (approximate).
  RefreshMode refresh_reps = RefreshMode::kStep;

  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

struct EvalConfig {
  std::vector<std::size_t> hits_k = {20, 50, 100};
  // Validation Hits@select_k picks the returned epoch.
  std::size_t select_k = 50;

  friend bool operator==(const EvalConfig&, const EvalConfig&) = default;
};

struct RunConfig {
  DataConfig data;
  ModelConfig model;
  AdamHyper optim;
  TrainConfig train;
  AugmentConfig augment;
  EvalConfig eval;
  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Throws kUsage describing the first invalid field.
void ValidateConfig(const RunConfig& config);

// Parses TOML-style text:
//
//   [section]
//   key = value     # strings may be quoted, lists are [a, b, c]
//
// Every RunConfig field is addressable as section.key; unknown keys are
// errors. Missing keys keep their defaults.
RunConfig ParseConfig(std::string_view text);
RunConfig LoadConfig(const std::filesystem::path& path);

// Applies one "section.key=value" override.
void ApplyOverride(RunConfig* config, std::string_view assignment);
void SetConfigValue(RunConfig* config, std::string_view key,
                    std::string_view value);

// Canonical text form; ParseConfig(ConfigToText(c)) == c up to the
// data-derived model.feature_dim.
std::string ConfigToText(const RunConfig& config);

// 16 hex digits of FNV-1a-64 over every setting except data file paths.
std::string ConfigHash(const RunConfig& config);

std::vector<std::string> ConfigKeys();

std::string FormatBranches(const std::vector<BranchConfig>& branches);
std::vector<BranchConfig> ParseBranches(std::string_view text);

}  // namespace gidn

#endif  // GIDN_CONFIG_H_
