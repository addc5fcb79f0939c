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

#include "gidn/metrics.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "gidn/error.h"

namespace gidn {

double HitsAtK(std::span<const double> pos_scores,
               std::span<const double> neg_scores, std::size_t k) {
  if (pos_scores.empty()) ThrowUsage("hits@k: no positive scores");
  if (neg_scores.empty()) ThrowUsage("hits@k: no negative scores");
  if (k < 1) ThrowUsage("hits@k: k must be >= 1");
  if (k >= neg_scores.size()) return 1.0;
  std::vector<double> negs(neg_scores.begin(), neg_scores.end());
  std::nth_element(negs.begin(), negs.begin() + static_cast<std::ptrdiff_t>(k - 1),
                   negs.end(), std::greater<>());
  const double threshold = negs[k - 1];
  const auto hits = std::count_if(pos_scores.begin(), pos_scores.end(),
                                  [&](double s) { return s > threshold; });
  return static_cast<double>(hits) / static_cast<double>(pos_scores.size());
}

double Mrr(std::span<const double> pos_scores,
           std::span<const std::vector<double>> neg_scores_per_pos) {
  if (pos_scores.empty()) ThrowUsage("mrr: no positive scores");
  if (neg_scores_per_pos.size() != pos_scores.size()) {
    ThrowUsage("mrr: need one negative list per positive");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < pos_scores.size(); ++i) {
    const auto& negs = neg_scores_per_pos[i];
    const auto beaten = std::count_if(negs.begin(), negs.end(), [&](double s) {
      return s >= pos_scores[i];
    });
    total += 1.0 / static_cast<double>(1 + beaten);
  }
  return total / static_cast<double>(pos_scores.size());
}

double Mrr(std::span<const double> pos_scores,
           std::span<const double> shared_neg_scores) {
  if (pos_scores.empty()) ThrowUsage("mrr: no positive scores");
  if (shared_neg_scores.empty()) ThrowUsage("mrr: no negative scores");
  std::vector<double> negs(shared_neg_scores.begin(), shared_neg_scores.end());
  std::sort(negs.begin(), negs.end());
  double total = 0.0;
  for (double s : pos_scores) {
    const auto first_ge = std::lower_bound(negs.begin(), negs.end(), s);
    const auto beaten = negs.end() - first_ge;
    total += 1.0 / static_cast<double>(1 + beaten);
  }
  return total / static_cast<double>(pos_scores.size());
}

double Auc(std::span<const double> pos_scores,
           std::span<const double> neg_scores) {
  if (pos_scores.empty() || neg_scores.empty()) {
    ThrowUsage("auc: need positive and negative scores");
  }
  struct Item {
    double score;
    bool positive;
  };
  std::vector<Item> items;
  items.reserve(pos_scores.size() + neg_scores.size());
  for (double s : pos_scores) items.push_back({s, true});
  for (double s : neg_scores) items.push_back({s, false});
  std::sort(items.begin(), items.end(),
            [](const Item& a, const Item& b) { return a.score < b.score; });

  // Tied groups share the average of their 1-based ranks. Twice the rank is
  // an integer, which keeps the sum exact.
  double twice_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < items.size()) {
    std::size_t j = i;
    while (j < items.size() && items[j].score == items[i].score) ++j;
    const double twice_avg = static_cast<double>(i + 1 + j);
    for (std::size_t t = i; t < j; ++t) {
      if (items[t].positive) twice_rank_sum += twice_avg;
    }
    i = j;
  }
  const double np = static_cast<double>(pos_scores.size());
  const double nn = static_cast<double>(neg_scores.size());
  const double u = 0.5 * twice_rank_sum - np * (np + 1.0) / 2.0;
  return u / (np * nn);
}

Summary Summarize(std::span<const double> values) {
  if (values.empty()) ThrowUsage("summary of an empty value list");
  Summary s;
  s.n = values.size();
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(s.n);
  if (s.n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(s.n - 1));
  }
  return s;
}

}  // namespace gidn
