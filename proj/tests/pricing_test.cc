// Copyright 2026 The cdnroute Authors
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


#include "cdnroute/pricing.h"

#include <gtest/gtest.h>

#include <random>

#include "cdnroute/errors.h"
#include "cdnroute/scenario.h"
#include "oracles.h"

namespace cdnroute {
namespace {

OverlayGraph CompleteGraph(int n) {
  OverlayGraph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u != v) g.AddEdge(u, v, {double(1 + u + 2 * v), 1, 100, 0.999});
    }
  }
  return g;
}

std::set<NodeId> RelaysOf(std::span<const Path> paths) {
  std::set<NodeId> relays;
  for (const Path& p : paths) relays.insert(p.relay().value_or(-1));
  return relays;
}

TEST(EnumerateCandidatesTest, CompleteFourNodes) {
  const OverlayGraph g = CompleteGraph(4);
  const Demand d{0, 1, 3, 10, 1000, 0.5};
  const auto paths = EnumerateCandidates(g, d);
  ASSERT_EQ(paths.size(), 3u);
  EXPECT_EQ(paths[0].hop_count(), 1);
  EXPECT_EQ(paths[1].relay(), 0);
  EXPECT_EQ(paths[2].relay(), 2);
}

TEST(EnumerateCandidatesTest, TightJitterLeavesNothing) {
  const OverlayGraph g = CompleteGraph(4);
  EXPECT_TRUE(EnumerateCandidates(g, {0, 0, 1, 10, 0.5, 0}).empty());
}

TEST(EnumerateCandidatesTest, IgnoresArtificialEdges) {
  OverlayGraph g(3);
  g.AddEdge(0, 1, {1, 0, 10, 1});
  const OverlayGraph aug = AugmentClique(g, 1);
  EXPECT_TRUE(EnumerateCandidates(aug, {0, 0, 2, 1, kInfinity, 0}).empty());
  EXPECT_EQ(EnumerateCandidates(aug, {0, 0, 1, 1, kInfinity, 0}).size(), 1u);
}

TEST(EnumerateCandidatesTest, TelcoMatchesBruteForce) {
  TelcoProfile profile;
  const Trace trace = GenerateTelcoTrace(profile, 3, 11);
  const auto demands = GenerateTelcoDemands(profile, 11);
  for (size_t epoch = 0; epoch < trace.epochs.size(); ++epoch) {
    const OverlayGraph g = AugmentClique(GraphForEpoch(trace, epoch), demands);
    for (const Demand& d : demands) {
      const auto paths = EnumerateCandidates(g, d);
      EXPECT_EQ(RelaysOf(paths), testing::BruteForceRoutes(g, d));
      for (const Path& p : paths) {
        EXPECT_TRUE(QosFeasible(p, d));
        EXPECT_EQ(testing::LogSumFeasible(g, p.edges(), d), true);
      }
      const auto direct = DirectCandidates(g, d);
      ASSERT_LE(direct.size(), 1u);
      if (!direct.empty()) {
        EXPECT_EQ(direct[0], paths[0]);
      }
    }
  }
}

TEST(EnumerateCandidatesTest, RandomGraphsMatchBruteForce) {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = testing::RandomInstance(seed);
    for (const Demand& d : inst.demands) {
      EXPECT_EQ(RelaysOf(EnumerateCandidates(inst.graph, d)),
                testing::BruteForceRoutes(inst.graph, d));
    }
  }
}

TEST(PriceDemandTest, ZeroDualsPickMinDelay) {
  const OverlayGraph g = CompleteGraph(4);
  const Demand d{0, 1, 3, 10, 1000, 0};
  const auto paths = EnumerateCandidates(g, d);
  const DualPoint duals = DualPoint::Zero(g, 1);
  double best = kInfinity;
  for (const Path& p : paths) best = std::min(best, p.total_delay());
  const auto found = PriceDemand(d, paths, duals, best + 1);
  ASSERT_TRUE(found.has_value());
  EXPECT_DOUBLE_EQ(found->path.total_delay(), best);
  EXPECT_DOUBLE_EQ(found->reduced_cost, -1);
  EXPECT_FALSE(PriceDemand(d, paths, duals, best - 1).has_value());
}

TEST(PriceDemandTest, BoundaryIsNotImproving) {
  const OverlayGraph g = CompleteGraph(3);
  const Demand d{0, 0, 1, 10, 1000, 0};
  const auto paths = DirectCandidates(g, d);
  ASSERT_EQ(paths.size(), 1u);
  const DualPoint duals = DualPoint::Zero(g, 1);
  EXPECT_FALSE(PriceDemand(d, paths, duals, paths[0].total_delay()).has_value());
  EXPECT_FALSE(PriceDemand(d, paths, duals, paths[0].total_delay() + 0.5e-7)
                   .has_value());
  EXPECT_TRUE(PriceDemand(d, paths, duals, paths[0].total_delay() + 2e-7)
                  .has_value());
}

TEST(PriceDemandTest, NegativeDualIsAContractViolation) {
  const OverlayGraph g = CompleteGraph(3);
  const Demand d{0, 0, 1, 10, 1000, 0};
  DualPoint duals = DualPoint::Zero(g, 1);
  duals.edge[0] = -1;
  EXPECT_THROW(PriceDemand(d, EnumerateCandidates(g, d), duals, 100),
               ContractViolation);
}

TEST(PriceDemandTest, RandomDualsMatchExhaustiveEvaluation) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = testing::RandomInstance(100 + trial, {6, 6, 1, 3});
    DualPoint duals = DualPoint::Zero(inst.graph, 1);
    for (double& v : duals.edge) v = gen() % 3 == 0 ? u(gen) : 0;
    for (double& v : duals.node) v = gen() % 2 == 0 ? u(gen) : 0;
    const Demand& d = inst.demands[0];
    const auto paths = EnumerateCandidates(inst.graph, d);
    // Independent evaluation of the priced length.
    double best = kInfinity;
    size_t best_index = 0;
    for (size_t i = 0; i < paths.size(); ++i) {
      double length = 0;
      for (EdgeId e : paths[i].edges()) {
        length += inst.graph.edge(e).metrics.delay_ms + d.rate_mbps * duals.edge[e];
      }
      for (NodeId v : paths[i].nodes()) length += d.rate_mbps * duals.node[v];
      if (length < best) {
        best = length;
        best_index = i;
      }
    }
    const double sigma = 1e4;
    const auto found = PriceDemand(d, paths, duals, sigma);
    if (paths.empty()) {
      EXPECT_FALSE(found.has_value());
      continue;
    }
    ASSERT_TRUE(found.has_value());
    EXPECT_EQ(found->candidate_index, best_index);
    EXPECT_NEAR(found->reduced_cost, best - sigma, 1e-9 * sigma);
    // Shifting sigma moves the reduced cost, not the argmin.
    const auto shifted = PriceDemand(d, paths, duals, sigma + 123);
    ASSERT_TRUE(shifted.has_value());
    EXPECT_EQ(shifted->candidate_index, best_index);
    EXPECT_NEAR(shifted->reduced_cost, found->reduced_cost - 123, 1e-6);
  }
}

}  // namespace
}  // namespace cdnroute
