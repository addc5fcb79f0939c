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

#include "gidn/config.h"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "gidn/error.h"

namespace gidn {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string_view Unquote(std::string_view s) {
  s = Trim(s);
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                        (s.front() == '\'' && s.back() == '\''))) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

[[noreturn]] void Invalid(std::string_view key, std::string_view value,
                          std::string_view expected) {
  ThrowUsage("invalid config value for " + std::string(key) + ": '" +
             std::string(value) + "' (expected " + std::string(expected) +
             ")");
}

template <typename T>
T ParseNumber(std::string_view key, std::string_view raw,
              std::string_view expected) {
  const std::string_view value = Unquote(raw);
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(),
                                   out);
  if (value.empty() || ec != std::errc() ||
      ptr != value.data() + value.size()) {
    Invalid(key, raw, expected);
  }
  return out;
}

std::size_t ParseSize(std::string_view key, std::string_view v) {
  return ParseNumber<std::size_t>(key, v, "non-negative integer");
}

int ParseInt(std::string_view key, std::string_view v) {
  return ParseNumber<int>(key, v, "integer");
}

double ParseReal(std::string_view key, std::string_view v) {
  const double x = ParseNumber<double>(key, v, "real number");
  if (!std::isfinite(x)) Invalid(key, v, "finite real number");
  return x;
}

bool ParseBool(std::string_view key, std::string_view raw) {
  const std::string_view v = Unquote(raw);
  if (v == "true") return true;
  if (v == "false") return false;
  Invalid(key, raw, "true|false");
}

std::vector<std::string_view> ParseList(std::string_view raw) {
  std::string_view v = Trim(raw);
  if (!v.empty() && v.front() == '[') {
    if (v.back() != ']') ThrowUsage("unterminated list: '" + std::string(raw) + "'");
    v = v.substr(1, v.size() - 2);
  }
  std::vector<std::string_view> items;
  while (!Trim(v).empty()) {
    const auto comma = v.find(',');
    const std::string_view item = Trim(v.substr(0, comma));
    if (!item.empty()) items.push_back(item);
    if (comma == std::string_view::npos) break;
    v = v.substr(comma + 1);
  }
  return items;
}

std::string FormatReal(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

std::string Quote(std::string_view s) { return "\"" + std::string(s) + "\""; }

template <typename T>
std::string FormatList(const std::vector<T>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(values[i]);
  }
  return out + "]";
}

struct Field {
  const char* key;
  std::function<void(RunConfig&, std::string_view key, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

const std::vector<Field>& Fields() {
  static const std::vector<Field> fields = {
      {"data.splits_dir",
       [](RunConfig& c, auto, auto v) { c.data.splits_dir = Unquote(v); },
       [](const RunConfig& c) { return Quote(c.data.splits_dir); }},
      {"data.features",
       [](RunConfig& c, auto, auto v) { c.data.features = Unquote(v); },
       [](const RunConfig& c) { return Quote(c.data.features); }},
      {"data.num_nodes",
       [](RunConfig& c, auto k, auto v) { c.data.num_nodes = ParseSize(k, v); },
       [](const RunConfig& c) { return std::to_string(c.data.num_nodes); }},
      {"data.merge_valid_into_graph",
       [](RunConfig& c, auto k, auto v) {
         c.data.merge_valid_into_graph = ParseBool(k, v);
       },
       [](const RunConfig& c) {
         return std::string(c.data.merge_valid_into_graph ? "true" : "false");
       }},
      {"data.eval_neg_per_pos",
       [](RunConfig& c, auto k, auto v) {
         c.data.eval_neg_per_pos = ParseSize(k, v);
       },
       [](const RunConfig& c) { return std::to_string(c.data.eval_neg_per_pos); }},
      {"data.negative_seed",
       [](RunConfig& c, auto k, auto v) {
         c.data.negative_seed = ParseNumber<std::uint64_t>(k, v, "seed");
       },
       [](const RunConfig& c) { return std::to_string(c.data.negative_seed); }},

      {"model.input",
       [](RunConfig& c, auto, auto v) { c.model.input = ParseInputMode(Unquote(v)); },
       [](const RunConfig& c) { return Quote(InputModeName(c.model.input)); }},
      {"model.embedding_dim",
       [](RunConfig& c, auto k, auto v) {
         c.model.embedding_dim = ParseSize(k, v);
       },
       [](const RunConfig& c) { return std::to_string(c.model.embedding_dim); }},
      {"model.hidden",
       [](RunConfig& c, auto k, auto v) { c.model.hidden = ParseSize(k, v); },
       [](const RunConfig& c) { return std::to_string(c.model.hidden); }},
      {"model.branches",
       [](RunConfig& c, auto, auto v) { c.model.branches = ParseBranches(v); },
       [](const RunConfig& c) { return FormatBranches(c.model.branches); }},
      {"model.hop_weights",
       [](RunConfig& c, auto, auto v) {
         c.model.hop_weights = ParseHopWeighting(Unquote(v));
       },
       [](const RunConfig& c) { return Quote(HopWeightingName(c.model.hop_weights)); }},
      {"model.loss",
       [](RunConfig& c, auto, auto v) { c.model.loss = ParseLossKind(Unquote(v)); },
       [](const RunConfig& c) { return Quote(LossKindName(c.model.loss)); }},
      {"model.self_loop_weight",
       [](RunConfig& c, auto k, auto v) {
         c.model.self_loop_weight = ParseReal(k, v);
       },
       [](const RunConfig& c) { return FormatReal(c.model.self_loop_weight); }},

      {"optim.lr",
       [](RunConfig& c, auto k, auto v) { c.optim.lr = ParseReal(k, v); },
       [](const RunConfig& c) { return FormatReal(c.optim.lr); }},
      {"optim.beta1",
       [](RunConfig& c, auto k, auto v) { c.optim.beta1 = ParseReal(k, v); },
       [](const RunConfig& c) { return FormatReal(c.optim.beta1); }},
      {"optim.beta2",
       [](RunConfig& c, auto k, auto v) { c.optim.beta2 = ParseReal(k, v); },
       [](const RunConfig& c) { return FormatReal(c.optim.beta2); }},
      {"optim.eps",
       [](RunConfig& c, auto k, auto v) { c.optim.eps = ParseReal(k, v); },
       [](const RunConfig& c) { return FormatReal(c.optim.eps); }},

      {"train.epochs",
       [](RunConfig& c, auto k, auto v) { c.train.epochs = ParseInt(k, v); },
       [](const RunConfig& c) { return std::to_string(c.train.epochs); }},
      {"train.batch_size",
       [](RunConfig& c, auto k, auto v) { c.train.batch_size = ParseSize(k, v); },
       [](const RunConfig& c) { return std::to_string(c.train.batch_size); }},
      {"train.eval_every",
       [](RunConfig& c, auto k, auto v) { c.train.eval_every = ParseInt(k, v); },
       [](const RunConfig& c) { return std::to_string(c.train.eval_every); }},
      {"train.negatives",
       [](RunConfig& c, auto k, auto v) { c.train.negatives = ParseSize(k, v); },
       [](const RunConfig& c) { return std::to_string(c.train.negatives); }},
      {"train.refresh_reps",
       [](RunConfig& c, auto k, auto v) {
         const auto s = Unquote(v);
         if (s == "step") {
           c.train.refresh_reps = RefreshMode::kStep;
         } else if (s == "epoch") {
           c.train.refresh_reps = RefreshMode::kEpoch;
         } else {
           Invalid(k, v, "step|epoch");
         }
       },
       [](const RunConfig& c) {
         return Quote(c.train.refresh_reps == RefreshMode::kStep ? "step"
                                                                 : "epoch");
       }},
      {"train.seeds",
       [](RunConfig& c, auto k, auto v) {
         c.seeds.clear();
         for (auto item : ParseList(v)) {
           c.seeds.push_back(ParseNumber<std::uint64_t>(k, item, "seed list"));
         }
         if (c.seeds.empty()) Invalid(k, v, "a non-empty seed list");
       },
       [](const RunConfig& c) { return FormatList(c.seeds); }},

      {"augment.enabled",
       [](RunConfig& c, auto k, auto v) { c.augment.enabled = ParseBool(k, v); },
       [](const RunConfig& c) {
         return std::string(c.augment.enabled ? "true" : "false");
       }},
      {"augment.walk_length",
       [](RunConfig& c, auto k, auto v) {
         c.augment.walk_length = ParseSize(k, v);
       },
       [](const RunConfig& c) { return std::to_string(c.augment.walk_length); }},
      {"augment.walks_per_node",
       [](RunConfig& c, auto k, auto v) {
         c.augment.walks_per_node = ParseSize(k, v);
       },
       [](const RunConfig& c) { return std::to_string(c.augment.walks_per_node); }},
      {"augment.window",
       [](RunConfig& c, auto k, auto v) { c.augment.window = ParseSize(k, v); },
       [](const RunConfig& c) { return std::to_string(c.augment.window); }},
      {"augment.tau",
       [](RunConfig& c, auto k, auto v) { c.augment.tau = ParseSize(k, v); },
       [](const RunConfig& c) { return std::to_string(c.augment.tau); }},
      {"augment.dropout",
       [](RunConfig& c, auto k, auto v) { c.augment.dropout = ParseReal(k, v); },
       [](const RunConfig& c) { return FormatReal(c.augment.dropout); }},

      {"eval.hits_k",
       [](RunConfig& c, auto k, auto v) {
         c.eval.hits_k.clear();
         for (auto item : ParseList(v)) c.eval.hits_k.push_back(ParseSize(k, item));
       },
       [](const RunConfig& c) { return FormatList(c.eval.hits_k); }},
      {"eval.select_k",
       [](RunConfig& c, auto k, auto v) { c.eval.select_k = ParseSize(k, v); },
       [](const RunConfig& c) { return std::to_string(c.eval.select_k); }},
  };
  return fields;
}

}  // namespace

std::string FormatBranches(const std::vector<BranchConfig>& branches) {
  std::string out = "[";
  for (std::size_t i = 0; i < branches.size(); ++i) {
    if (i) out += ", ";
    out += "\"" + std::string(TransitionKindName(branches[i].kind)) + ":" +
           std::to_string(branches[i].depth) + ":" +
           std::to_string(branches[i].out_dim) + "\"";
  }
  return out + "]";
}

std::vector<BranchConfig> ParseBranches(std::string_view text) {
  std::vector<BranchConfig> out;
  for (std::string_view item : ParseList(text)) {
    item = Unquote(item);
    const auto c1 = item.find(':');
    const auto c2 =
        c1 == std::string_view::npos ? c1 : item.find(':', c1 + 1);
    if (c2 == std::string_view::npos) {
      Invalid("model.branches", item, "kind:depth:width");
    }
    BranchConfig b;
    b.kind = ParseTransitionKind(Trim(item.substr(0, c1)));
    b.depth = ParseInt("model.branches", item.substr(c1 + 1, c2 - c1 - 1));
    b.out_dim = ParseSize("model.branches", item.substr(c2 + 1));
    ValidateBranch(b);
    out.push_back(b);
  }
  if (out.empty()) ThrowUsage("model.branches: branch list is empty");
  return out;
}

void SetConfigValue(RunConfig* config, std::string_view key,
                    std::string_view value) {
  for (const Field& f : Fields()) {
    if (key == f.key) {
      f.set(*config, key, value);
      return;
    }
  }
  ThrowUsage("unknown config key '" + std::string(key) + "'");
}

void ApplyOverride(RunConfig* config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    ThrowUsage("override must look like section.key=value, got '" +
               std::string(assignment) + "'");
  }
  SetConfigValue(config, Trim(assignment.substr(0, eq)),
                 Trim(assignment.substr(eq + 1)));
}

RunConfig ParseConfig(std::string_view text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    ThrowUsage("config parse error: line " + std::to_string(e.line()) + ": " +
               e.message());
  }
  RunConfig config;
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      ThrowUsage("config key '" + section + "' must be inside a [section]");
    }
    for (const auto& [key, value] : body) {
      SetConfigValue(&config, section + "." + key, value.data());
    }
  }
  return config;
}

RunConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) ThrowData("cannot open config: " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return ParseConfig(os.str());
}

std::string ConfigToText(const RunConfig& config) {
  std::string out;
  std::string section;
  for (const Field& f : Fields()) {
    const std::string_view key = f.key;
    const auto dot = key.find('.');
    const std::string sec(key.substr(0, dot));
    if (sec != section) {
      if (!section.empty()) out += "\n";
      out += "[" + sec + "]\n";
      section = sec;
    }
    out += std::string(key.substr(dot + 1)) + " = " + f.get(config) + "\n";
  }
  return out;
}

std::string ConfigHash(const RunConfig& config) {
  // File locations are left out so the same experiment hashes the same from
  // any checkout or working directory.
  std::string text;
  for (const Field& f : Fields()) {
    const std::string_view key = f.key;
    if (key == "data.splits_dir" || key == "data.features") continue;
    text += std::string(key) + "=" + f.get(config) + "\n";
  }
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<std::string> ConfigKeys() {
  std::vector<std::string> keys;
  for (const Field& f : Fields()) keys.emplace_back(f.key);
  return keys;
}

void ValidateConfig(const RunConfig& c) {
  if (c.seeds.empty()) ThrowUsage("config: at least one seed is required");
  if (c.train.epochs < 1) ThrowUsage("config: train.epochs must be >= 1");
  if (c.train.eval_every < 1) ThrowUsage("config: train.eval_every must be >= 1");
  if (c.train.batch_size < 1) ThrowUsage("config: train.batch_size must be >= 1");
  if (c.train.negatives < 1) ThrowUsage("config: train.negatives must be >= 1");
  if (c.eval.hits_k.empty()) ThrowUsage("config: eval.hits_k is empty");
  for (std::size_t k : c.eval.hits_k) {
    if (k < 1) ThrowUsage("config: eval.hits_k values must be >= 1");
  }
  if (c.eval.select_k < 1) ThrowUsage("config: eval.select_k must be >= 1");
  if (c.data.eval_neg_per_pos < 1) {
    ThrowUsage("config: data.eval_neg_per_pos must be >= 1");
  }
  if (c.model.branches.empty()) ThrowUsage("config: model.branches is empty");
  for (const BranchConfig& b : c.model.branches) ValidateBranch(b);
  if (c.model.hidden < 1) ThrowUsage("config: model.hidden must be >= 1");
  if (UsesEmbeddings(c.model) && c.model.embedding_dim < 1) {
    ThrowUsage("config: model.embedding_dim must be >= 1");
  }
  if (!(c.model.self_loop_weight > 0.0)) {
    ThrowUsage("config: model.self_loop_weight must be > 0");
  }
  if (!(c.optim.lr >= 0.0)) ThrowUsage("config: optim.lr must be >= 0");
  if (!(c.optim.beta1 >= 0.0 && c.optim.beta1 < 1.0) ||
      !(c.optim.beta2 >= 0.0 && c.optim.beta2 < 1.0)) {
    ThrowUsage("config: optim betas must be in [0, 1)");
  }
  if (!(c.optim.eps > 0.0)) ThrowUsage("config: optim.eps must be > 0");
  if (c.augment.walk_length < 1) {
    ThrowUsage("config: augment.walk_length must be >= 1");
  }
  if (c.augment.window < 1) ThrowUsage("config: augment.window must be >= 1");
  if (c.augment.tau < 1) ThrowUsage("config: augment.tau must be >= 1");
  if (!(c.augment.dropout >= 0.0 && c.augment.dropout < 1.0)) {
    ThrowUsage("config: augment.dropout must be in [0, 1)");
  }
}

}  // namespace gidn
