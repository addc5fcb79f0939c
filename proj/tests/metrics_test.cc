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

#include <cmath>
#include <vector>

#include "gidn/error.h"
#include "gidn/rng.h"
#include "gtest/gtest.h"
#include "testing/oracles.h"

namespace gidn {
namespace {

std::vector<double> Hundredths() {
  std::vector<double> v;
  for (int i = 0; i < 100; ++i) v.push_back(i / 100.0);
  return v;
}

// Scores drawn from a handful of levels so ties are common.
std::vector<double> TieHeavy(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = static_cast<double>(rng.UniformInt(4)) * 0.25;
  return v;
}

std::vector<double> Continuous(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.Normal();
  return v;
}

TEST(HitsAtKTest, WorkedThreshold) {
  const std::vector<double> pos = {0.90};
  EXPECT_EQ(HitsAtK(pos, Hundredths(), 50), 1.0);
  EXPECT_EQ(HitsAtK(pos, Hundredths(), 5), 0.0);
}

TEST(HitsAtKTest, SeparatedAndVacuous) {
  const std::vector<double> pos = {5.0, 6.0};
  const std::vector<double> neg = {1.0, 2.0, 3.0};
  EXPECT_EQ(HitsAtK(pos, neg, 1), 1.0);
  const std::vector<double> low = {-1.0};
  EXPECT_EQ(HitsAtK(low, neg, 3), 1.0);
  EXPECT_EQ(HitsAtK(low, neg, 7), 1.0);
}

TEST(HitsAtKTest, TieWithThresholdIsMiss) {
  EXPECT_EQ(HitsAtK(std::vector<double>{0.5}, std::vector<double>{0.5, 0.1}, 1),
            0.0);
}

TEST(HitsAtKTest, MatchesCountingOracle) {
  Rng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const bool ties = trial % 2 == 0;
    const auto pos = ties ? TieHeavy(rng, 20) : Continuous(rng, 20);
    const auto neg = ties ? TieHeavy(rng, 30) : Continuous(rng, 30);
    for (std::size_t k : {1, 3, 10, 29, 30, 50}) {
      ASSERT_EQ(HitsAtK(pos, neg, k), testing::HitsOracle(pos, neg, k));
    }
  }
}

TEST(HitsAtKTest, MonotoneInvariantAndOrderedInK) {
  Rng rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    auto pos = Continuous(rng, 15);
    auto neg = Continuous(rng, 40);
    double prev = 0.0;
    for (std::size_t k = 1; k <= 45; ++k) {
      const double h = HitsAtK(pos, neg, k);
      EXPECT_GE(h, prev);
      prev = h;
      auto pe = pos;
      auto ne = neg;
      for (double& x : pe) x = std::exp(x);
      for (double& x : ne) x = std::exp(x);
      EXPECT_EQ(HitsAtK(pe, ne, k), h);
      for (double& x : pe) x = 3.0 * x - 2.0;
      for (double& x : ne) x = 3.0 * x - 2.0;
      EXPECT_EQ(HitsAtK(pe, ne, k), h);
    }
    EXPECT_EQ(prev, 1.0);
  }
}

TEST(HitsAtKTest, EmptyInputsRejected) {
  EXPECT_THROW(HitsAtK({}, std::vector<double>{1.0}, 1), Error);
  EXPECT_THROW(HitsAtK(std::vector<double>{1.0}, {}, 1), Error);
  EXPECT_THROW(HitsAtK(std::vector<double>{1.0}, std::vector<double>{1.0}, 0),
               Error);
}

TEST(MrrTest, BeatsAllAndTie) {
  const std::vector<std::vector<double>> negs = {{0.1, 0.2}, {0.5, 0.1}};
  EXPECT_EQ(Mrr(std::vector<double>{0.9, 0.5}, negs), (1.0 + 0.5) / 2.0);
  EXPECT_EQ(Mrr(std::vector<double>{0.5}, std::vector<double>{0.5, 0.1}), 0.5);
}

TEST(MrrTest, MatchesSortOracle) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const bool ties = trial % 2 == 0;
    const auto pos = ties ? TieHeavy(rng, 20) : Continuous(rng, 20);
    const auto neg = ties ? TieHeavy(rng, 10) : Continuous(rng, 10);
    ASSERT_EQ(Mrr(pos, neg), testing::MrrOracle(pos, neg));
    const std::vector<std::vector<double>> lists(pos.size(), neg);
    ASSERT_EQ(Mrr(pos, lists), testing::MrrOracle(pos, neg));
  }
}

TEST(AucTest, ConstantScoresGiveHalf) {
  const std::vector<double> same(7, 0.3);
  EXPECT_EQ(Auc(same, same), 0.5);
}

TEST(AucTest, SeparatedGivesOne) {
  EXPECT_EQ(Auc(std::vector<double>{2.0, 3.0}, std::vector<double>{0.0, 1.0}),
            1.0);
}

TEST(AucTest, MatchesPairwiseOracle) {
  Rng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const bool ties = trial % 2 == 0;
    const auto pos = ties ? TieHeavy(rng, 50) : Continuous(rng, 50);
    const auto neg = ties ? TieHeavy(rng, 50) : Continuous(rng, 50);
    const double got = Auc(pos, neg);
    EXPECT_NEAR(got, testing::AucOracle(pos, neg), 1e-12);
    EXPECT_GE(got, 0.0);
    EXPECT_LE(got, 1.0);
  }
}

TEST(SummarizeTest, HandComputedSampleStd) {
  const Summary s = Summarize(std::vector<double>{0.5, 0.7});
  EXPECT_NEAR(s.mean, 0.6, 1e-15);
  EXPECT_NEAR(s.std, std::sqrt(0.02), 1e-15);
  EXPECT_NEAR(s.std, 0.1414, 1e-4);
  EXPECT_EQ(s.n, 2u);
}

TEST(SummarizeTest, SingleValueHasZeroStd) {
  const Summary s = Summarize(std::vector<double>{0.42});
  EXPECT_EQ(s.std, 0.0);
  EXPECT_EQ(s.n, 1u);
}

TEST(SummarizeTest, MatchesLongDoubleOracle) {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(2 + rng.UniformInt(20));
    for (double& x : v) x = rng.Uniform();
    const auto want = testing::MeanStdOracle(v);
    const Summary s = Summarize(v);
    EXPECT_NEAR(s.mean, want.mean, 1e-12);
    EXPECT_NEAR(s.std, want.std, 1e-12);
  }
}

}  // namespace
}  // namespace gidn
