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

#include "gidn/checkpoint.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "gidn/error.h"

namespace gidn {

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

namespace {

constexpr char kMagic[8] = {'G', 'I', 'D', 'N', 'C', 'K', 'P', 'T'};

class Writer {
 public:
  template <typename T>
  void Put(T value) {
    char buf[sizeof(T)];
    std::memcpy(buf, &value, sizeof(T));
    out_.append(buf, sizeof(T));
  }
  void PutString(std::string_view s) {
    Put<std::uint64_t>(s.size());
    out_.append(s);
  }
  void PutRaw(const void* data, std::size_t n) {
    out_.append(static_cast<const char*>(data), n);
  }
  std::string Take() { return std::move(out_); }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}

  template <typename T>
  T Get() {
    T value;
    std::memcpy(&value, Take(sizeof(T)), sizeof(T));
    return value;
  }
  std::string GetString() {
    const auto n = Get<std::uint64_t>();
    return std::string(Take(n), n);
  }
  const char* Take(std::size_t n) {
    if (n > in_.size() - pos_) ThrowData("checkpoint: truncated file");
    const char* p = in_.data() + pos_;
    pos_ += n;
    return p;
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  std::string_view in_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string SerializeCheckpoint(const Checkpoint& checkpoint) {
  Writer w;
  w.PutRaw(kMagic, sizeof(kMagic));
  w.Put<std::uint32_t>(kCheckpointVersion);
  w.PutString(checkpoint.config_text);
  w.PutString(checkpoint.rng_state);
  w.Put<std::uint32_t>(
      static_cast<std::uint32_t>(checkpoint.params.branches.size()));
  const auto tensors = Tensors(checkpoint.params);
  w.Put<std::uint32_t>(static_cast<std::uint32_t>(tensors.size()));
  for (const auto& t : tensors) {
    w.Put<std::uint32_t>(static_cast<std::uint32_t>(t.name.size()));
    w.PutRaw(t.name.data(), t.name.size());
    w.Put<std::uint64_t>(t.tensor->rows());
    w.Put<std::uint64_t>(t.tensor->cols());
    w.PutRaw(t.tensor->values().data(), t.tensor->size() * sizeof(double));
  }
  return w.Take();
}

Checkpoint DeserializeCheckpoint(std::string_view bytes) {
  Reader r(bytes);
  if (std::memcmp(r.Take(sizeof(kMagic)), kMagic, sizeof(kMagic)) != 0) {
    ThrowData("checkpoint: bad magic");
  }
  const auto version = r.Get<std::uint32_t>();
  if (version != kCheckpointVersion) {
    ThrowData("checkpoint: unsupported version " + std::to_string(version));
  }
  Checkpoint ckpt;
  ckpt.config_text = r.GetString();
  ckpt.rng_state = r.GetString();
  ckpt.params.branches.resize(r.Get<std::uint32_t>());

  auto slots = Tensors(ckpt.params);
  const auto count = r.Get<std::uint32_t>();
  if (count != slots.size()) ThrowData("checkpoint: tensor count mismatch");
  for (auto& slot : slots) {
    const auto name_len = r.Get<std::uint32_t>();
    const std::string name(r.Take(name_len), name_len);
    if (name != slot.name) {
      ThrowData("checkpoint: expected tensor '" + slot.name + "', found '" +
                name + "'");
    }
    const auto rows = r.Get<std::uint64_t>();
    const auto cols = r.Get<std::uint64_t>();
    if (cols != 0 && rows > (bytes.size() / sizeof(double)) / cols) {
      ThrowData("checkpoint: tensor '" + name + "' shape exceeds file size");
    }
    Matrix m(rows, cols);
    std::memcpy(m.values().data(), r.Take(m.size() * sizeof(double)),
                m.size() * sizeof(double));
    *slot.tensor = std::move(m);
  }
  if (!r.done()) ThrowData("checkpoint: trailing bytes");
  return ckpt;
}

void SaveCheckpoint(const std::filesystem::path& path,
                    const Checkpoint& checkpoint) {
  const std::string bytes = SerializeCheckpoint(checkpoint);
  std::ofstream out(path, std::ios::binary);
  if (!out) ThrowData("cannot write checkpoint: " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) ThrowData("write failed: " + path.string());
}

Checkpoint LoadCheckpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) ThrowData("cannot open checkpoint: " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return DeserializeCheckpoint(os.str());
}

}  // namespace gidn
