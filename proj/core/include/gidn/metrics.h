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

#ifndef GIDN_METRICS_H_
#define GIDN_METRICS_H_

#include <cstddef>
#include <span>
#include <vector>

namespace gidn {

// Fraction of positives scoring strictly above the k-th largest negative.
// Ties count as misses; k >= |neg| makes every positive a hit.
double HitsAtK(std::span<const double> pos_scores,
               std::span<const double> neg_scores, std::size_t k);

// Mean of 1 / rank, rank = 1 + #{own negatives scoring >= the positive}.
double Mrr(std::span<const double> pos_scores,
           std::span<const std::vector<double>> neg_scores_per_pos);

// Every positive ranked against one shared negative list.
double Mrr(std::span<const double> pos_scores,
           std::span<const double> shared_neg_scores);

// P(score+ > score-) with ties counted 1/2, via the rank-sum statistic.
double Auc(std::span<const double> pos_scores,
           std::span<const double> neg_scores);

struct Summary {
  double mean = 0.0;
  // Sample standard deviation (n - 1 denominator); 0 when n == 1.
  double std = 0.0;
  std::size_t n = 0;
};

Summary Summarize(std::span<const double> values);

}  // namespace gidn

#endif  // GIDN_METRICS_H_
