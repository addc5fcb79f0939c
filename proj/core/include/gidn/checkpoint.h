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

#ifndef GIDN_CHECKPOINT_H_
#define GIDN_CHECKPOINT_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "gidn/model.h"

namespace gidn {

// Binary model container, all integers and reals little-endian:
//
//   magic       8 bytes  "GIDNCKPT"
//   version     u32      1
//   config      u64 length + UTF-8 bytes (canonical config text)
//   rng_state   u64 length + bytes (std::mt19937_64 text state)
//   branches    u32      number of inception branches
//   tensors     u32      tensor count, then per tensor in declared order:
//                 u32 name length + name, u64 rows, u64 cols,
//                 rows*cols IEEE-754 binary64 values, row-major
//
// Tensor order follows Tensors(ModelParams). save -> load is bit-exact.
struct Checkpoint {
  std::string config_text;
  ModelParams params;
  std::string rng_state;

  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

inline constexpr std::uint32_t kCheckpointVersion = 1;

std::string SerializeCheckpoint(const Checkpoint& checkpoint);
Checkpoint DeserializeCheckpoint(std::string_view bytes);

void SaveCheckpoint(const std::filesystem::path& path,
                    const Checkpoint& checkpoint);
Checkpoint LoadCheckpoint(const std::filesystem::path& path);

}  // namespace gidn

#endif  // GIDN_CHECKPOINT_H_
