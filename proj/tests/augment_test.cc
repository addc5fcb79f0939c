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


#include "gidn/augment.h"

#include <algorithm>
#include <memory>
#include <set>
#include <vector>

#include "gidn/error.h"
#include "gidn/rng.h"
#include "gtest/gtest.h"
#include "testing/oracles.h"

namespace gidn {
namespace {

SparseGraph Path3() {
  return BuildCsr(3, std::vector<NodePair>{{0, 1}, {1, 2}});
}

TEST(SampleWalksTest, LengthOneIsStartNode) {
  Rng rng(1);
  const SparseGraph g = testing::RandomGraph(rng, 8, 0.4);
  const WalkSet w = SampleWalks(g, 1, 3, 7);
  ASSERT_EQ(w.walks.size(), 24u);
  for (std::size_t i = 0; i < w.walks.size(); ++i) {
    EXPECT_EQ(w.walks[i], std::vector<NodeId>{static_cast<NodeId>(i / 3)});
  }
}

TEST(SampleWalksTest, IsolatedNodeStops) {
  const SparseGraph g = BuildCsr(3, std::vector<NodePair>{{0, 1}});
  const WalkSet w = SampleWalks(g, 6, 4, 3);
  for (const auto& walk : w.walks) {
    if (walk.front() == 2) EXPECT_EQ(walk.size(), 1u);
  }
}

TEST(SampleWalksTest, EveryStepIsAnArc) {
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const SparseGraph g = testing::RandomSparseGraph(rng, 2 + rng.UniformInt(30));
    const WalkSet w = SampleWalks(g, 1 + rng.UniformInt(12), 3, trial);
    for (std::size_t i = 0; i < w.walks.size(); ++i) {
      const auto& walk = w.walks[i];
      EXPECT_EQ(walk.front(), i / 3);
      EXPECT_LE(walk.size(), w.walk_length);
      for (std::size_t s = 1; s < walk.size(); ++s) {
        ASSERT_TRUE(g.HasEdge(walk[s - 1], walk[s]));
      }
      if (walk.size() < w.walk_length) EXPECT_EQ(g.degree(walk.back()), 0u);
    }
  }
}

TEST(SampleWalksTest, UniformNextHop) {
  const SparseGraph g = Path3();
  std::size_t to_zero = 0;
  std::size_t total = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const WalkSet w = SampleWalks(g, 2, 50, seed);
    for (const auto& walk : w.walks) {
      if (walk.front() != 1) continue;
      ++total;
      to_zero += walk[1] == 0 ? 1 : 0;
    }
  }
  EXPECT_NEAR(static_cast<double>(to_zero) / static_cast<double>(total), 0.5,
              0.05);
}

TEST(SampleWalksTest, DeterministicAndSeedSensitive) {
  Rng rng(3);
  const SparseGraph g = testing::RandomGraph(rng, 30, 0.2);
  EXPECT_EQ(SampleWalks(g, 8, 2, 11), SampleWalks(g, 8, 2, 11));
  EXPECT_NE(SampleWalks(g, 8, 2, 11).walks, SampleWalks(g, 8, 2, 12).walks);
}

TEST(CooccurrenceTest, PathWalkFindsSkipPair) {
  WalkSet w;
  w.walks = {{0, 1, 2}};
  EXPECT_EQ(CooccurrenceAugment(Path3(), w, 2, 1),
            (std::vector<NodePair>{{0, 2}}));
}

TEST(CooccurrenceTest, HugeThresholdAddsNothing) {
  WalkSet w;
  w.walks = {{0, 1, 2}, {2, 1, 0}, {0, 1, 2}};
  EXPECT_TRUE(CooccurrenceAugment(Path3(), w, 2, kNeverAdd).empty());
}

TEST(CooccurrenceTest, UnitWindowOnlySeesEdges) {
  Rng rng(4);
  const SparseGraph g = testing::RandomGraph(rng, 20, 0.2);
  EXPECT_TRUE(CooccurrenceAugment(g, SampleWalks(g, 10, 5, 1), 1, 1).empty());
}

TEST(CooccurrenceTest, OrderIndependentAndNoExistingEdges) {
  Rng rng(5);
  const SparseGraph g = testing::RandomGraph(rng, 25, 0.15);
  WalkSet w = SampleWalks(g, 8, 4, 2);
  const auto pairs = CooccurrenceAugment(g, w, 3, 2);
  for (const NodePair& p : pairs) {
    EXPECT_FALSE(g.HasEdge(p.u, p.v));
    EXPECT_NE(p.u, p.v);
  }
  std::reverse(w.walks.begin(), w.walks.end());
  EXPECT_EQ(CooccurrenceAugment(g, w, 3, 2), pairs);
}

TEST(EdgeDropoutTest, ZeroProbabilityDropsNothing) {
  Rng rng(6);
  auto g = std::make_shared<const SparseGraph>(testing::RandomGraph(rng, 20, 0.3));
  const auto view = EdgeDropout(g, 0.0, 1);
  EXPECT_TRUE(view.dropped.empty());
  EXPECT_EQ(view.Materialize(), *g);
}

TEST(EdgeDropoutTest, HalfProbabilityConcentrates) {
  Rng rng(7);
  std::set<NodePair> edges;
  while (edges.size() < 10000) {
    const auto u = static_cast<NodeId>(rng.UniformInt(2000));
    const auto v = static_cast<NodeId>(rng.UniformInt(2000));
    if (u != v) edges.insert(Canonical({u, v}));
  }
  auto g = std::make_shared<const SparseGraph>(
      BuildCsr(2000, std::vector<NodePair>(edges.begin(), edges.end())));
  const auto view = EdgeDropout(g, 0.5, 3);
  EXPECT_NEAR(static_cast<double>(view.dropped.size()) / 10000.0, 0.5, 0.02);
  EXPECT_EQ(EdgeDropout(g, 0.5, 3).dropped, view.dropped);
  for (const NodePair& e : view.dropped) EXPECT_TRUE(g->HasEdge(e.u, e.v));
  EXPECT_EQ(view.Materialize().num_edges(), 10000 - view.dropped.size());
}

TEST(EdgeDropoutTest, InvalidProbabilityRejected) {
  auto g = std::make_shared<const SparseGraph>(Path3());
  EXPECT_THROW(EdgeDropout(g, 1.0, 1), Error);
  EXPECT_THROW(EdgeDropout(g, -0.1, 1), Error);
}

TEST(AugmentedViewTest, AddAndDropCompose) {
  Rng rng(8);
  auto g = std::make_shared<const SparseGraph>(testing::RandomGraph(rng, 15, 0.3));
  auto view = EdgeDropout(g, 0.3, 5);
  const auto extra = CooccurrenceAugment(*g, SampleWalks(*g, 6, 4, 1), 3, 1);
  AddEdges(&view, extra);
  const SparseGraph m = view.Materialize();
  for (const NodePair& e : view.added) {
    EXPECT_FALSE(g->HasEdge(e.u, e.v));
    EXPECT_TRUE(m.HasEdge(e.u, e.v));
  }
  for (const NodePair& e : view.dropped) EXPECT_FALSE(m.HasEdge(e.u, e.v));
  EXPECT_EQ(m.num_edges(),
            g->num_edges() - view.dropped.size() + view.added.size());
  for (NodeId u = 0; u < m.num_nodes(); ++u) EXPECT_FALSE(m.HasEdge(u, u));
}

TEST(SampleNegativesTest, CompleteGraphExhausts) {
  const SparseGraph k3 = BuildCsr(3, std::vector<NodePair>{{0, 1}, {1, 2}, {0, 2}});
  EXPECT_THROW(SampleNegatives(k3, std::vector<NodePair>{{0, 1}}, 1, 1), Error);
}

TEST(SampleNegativesTest, SparseGraphContract) {
  Rng rng(9);
  const SparseGraph g = testing::RandomGraph(rng, 1000, 0.004);
  const auto pos = g.Edges();
  const auto neg = SampleNegatives(g, pos, 1, 17);
  ASSERT_EQ(neg.size(), pos.size());
  for (const NodePair& p : neg) {
    EXPECT_NE(p.u, p.v);
    EXPECT_FALSE(g.HasEdge(p.u, p.v));
  }
  EXPECT_EQ(SampleNegatives(g, pos, 1, 17), neg);
  EXPECT_EQ(SampleNegatives(g, pos, 3, 17).size(), 3 * pos.size());
}

TEST(SampleNegativesTest, ExcludedPairsAvoided) {
  const SparseGraph g = BuildCsr(4, std::vector<NodePair>{{0, 1}});
  const PairSet exclude = MakePairSet(std::vector<NodePair>{{0, 2}});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (const NodePair& p :
         SampleNegatives(g, std::vector<NodePair>{{0, 1}}, 4, seed, exclude)) {
      EXPECT_NE(PairKey(p), PairKey(0, 2));
      EXPECT_NE(PairKey(p), PairKey(0, 1));
    }
  }
}

}  // namespace
}  // namespace gidn
