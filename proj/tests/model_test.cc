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


#include "cdnroute/model.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cdnroute/errors.h"
#include "oracles.h"

namespace cdnroute {
namespace {

LinkMetrics Metrics(double delay, double jitter = 0, double success = 1,
                    double capacity = kInfinity) {
  return {delay, jitter, capacity, success};
}

TEST(OverlayGraphTest, AddEdgeRejectsBadInput) {
  OverlayGraph g(3);
  g.AddEdge(0, 1, Metrics(5));
  EXPECT_THROW(g.AddEdge(0, 1, Metrics(6)), InvalidInputError);
  EXPECT_THROW(g.AddEdge(1, 1, Metrics(6)), InvalidInputError);
  EXPECT_THROW(g.AddEdge(0, 3, Metrics(6)), InvalidInputError);
  EXPECT_THROW(g.AddEdge(-1, 2, Metrics(6)), InvalidInputError);
  EXPECT_THROW(g.AddEdge(1, 2, Metrics(-1)), InvalidInputError);
  EXPECT_THROW(g.AddEdge(1, 2, Metrics(1, 0, 1.3)), InvalidInputError);
  EXPECT_THROW(g.AddEdge(1, 2, Metrics(1, 0, 0)), InvalidInputError);
  EXPECT_THROW(g.AddEdge(1, 2, Metrics(1, -2)), InvalidInputError);
  EXPECT_THROW(g.AddEdge(1, 2, Metrics(1, 0, 1, 0)), InvalidInputError);
  EXPECT_EQ(g.num_edges(), 1);
  ASSERT_TRUE(g.FindEdge(0, 1).has_value());
  EXPECT_FALSE(g.FindEdge(1, 0).has_value());
}

TEST(OverlayGraphTest, NodeLimitsDefaultToUnlimited) {
  OverlayGraph g(2);
  EXPECT_TRUE(std::isinf(g.node_limit(0)));
  g.SetNodeLimit(1, 150);
  EXPECT_EQ(g.node_limit(1), 150);
  EXPECT_THROW(g.SetNodeLimit(2, 1), InvalidInputError);
  EXPECT_THROW(g.SetNodeLimit(0, -1), InvalidInputError);
}

TEST(AugmentCliqueTest, ThreeNodeLine) {
  OverlayGraph g(3);
  g.AddEdge(0, 1, Metrics(10));
  g.AddEdge(1, 2, Metrics(4));
  const OverlayGraph aug = AugmentClique(g, 2);
  EXPECT_EQ(aug.num_edges(), 6);
  EXPECT_EQ(aug.num_real_edges(), 2);
  EXPECT_DOUBLE_EQ(aug.big_m(), 41);
  EXPECT_DOUBLE_EQ(aug.dummy_penalty(), 410);
  int artificial = 0;
  for (const Edge& e : aug.edges()) {
    if (!e.artificial) continue;
    ++artificial;
    EXPECT_DOUBLE_EQ(e.metrics.delay_ms, 41);
    EXPECT_DOUBLE_EQ(e.metrics.jitter_ms, 0);
    EXPECT_DOUBLE_EQ(e.metrics.success_prob, 1);
    EXPECT_TRUE(std::isinf(e.metrics.capacity_mbps));
  }
  EXPECT_EQ(artificial, 4);
}

TEST(AugmentCliqueTest, FullCliqueOnlyRecordsBigM) {
  OverlayGraph g(3);
  for (int u = 0; u < 3; ++u) {
    for (int v = 0; v < 3; ++v) {
      if (u != v) g.AddEdge(u, v, Metrics(1 + u + v));
    }
  }
  const OverlayGraph aug = AugmentClique(g, 5);
  EXPECT_EQ(aug.num_edges(), g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e) EXPECT_EQ(aug.edge(e), g.edge(e));
  EXPECT_DOUBLE_EQ(aug.big_m(), 2 * 5 * 4 + 1);
}

TEST(AugmentCliqueTest, TelcoShape) {
  OverlayGraph g(11);
  std::mt19937_64 gen(7);
  int slot = 0;
  int skipped = 0;
  for (int u = 0; u < 11; ++u) {
    for (int v = 0; v < 11; ++v) {
      if (u == v) continue;
      if (slot++ % 3 == 1 && skipped < 28) {
        ++skipped;
        continue;
      }
      g.AddEdge(u, v, Metrics(5 + gen() % 70));
    }
  }
  ASSERT_EQ(g.num_edges(), 82);
  const OverlayGraph aug = AugmentClique(g, 82);
  EXPECT_EQ(aug.num_edges(), 110);
  EXPECT_EQ(aug.num_edges() - aug.num_real_edges(), 28);
}

TEST(AugmentCliqueTest, IdempotentAndValidated) {
  OverlayGraph g(3);
  g.AddEdge(0, 1, Metrics(10));
  const OverlayGraph aug = AugmentClique(g, 2);
  EXPECT_EQ(AugmentClique(aug, 2), aug);
  EXPECT_THROW(AugmentClique(g, 0), InvalidInputError);
  EXPECT_THROW(AugmentClique(OverlayGraph(1), 1), InvalidInputError);
}

Demand MakeDemand(NodeId s, NodeId t, double rate = 10,
                  double max_jitter = kInfinity, double min_success = 0) {
  return {0, s, t, rate, max_jitter, min_success};
}

TEST(DemandTest, Validate) {
  EXPECT_NO_THROW(MakeDemand(0, 1).Validate(2));
  EXPECT_THROW(MakeDemand(1, 1).Validate(2), InvalidInputError);
  EXPECT_THROW(MakeDemand(0, 2).Validate(2), InvalidInputError);
  EXPECT_THROW(MakeDemand(0, 1, 0).Validate(2), InvalidInputError);
  EXPECT_THROW(MakeDemand(0, 1, 1, 5, 1.5).Validate(2), InvalidInputError);
}

TEST(QosFeasibleTest, SpecCases) {
  OverlayGraph g(3);
  const EdgeId e01 = g.AddEdge(0, 1, Metrics(10, 300, 0.997));
  const EdgeId e12 = g.AddEdge(1, 2, Metrics(10, 300, 0.995));
  const EdgeId e02 = g.AddEdge(0, 2, Metrics(10, 0, 1));

  EXPECT_TRUE(QosFeasible(Path::Direct(g, MakeDemand(0, 2), e02),
                          MakeDemand(0, 2, 10, 0, 1)));

  const Demand jitter_bound = MakeDemand(0, 2, 10, 500);
  EXPECT_FALSE(QosFeasible(Path::Relay(g, jitter_bound, e01, e12), jitter_bound));

  const Demand loss_bound = MakeDemand(0, 2, 10, kInfinity, 0.99);
  const Path relay = Path::Relay(g, loss_bound, e01, e12);
  EXPECT_DOUBLE_EQ(relay.success_prob(), 0.992015);
  EXPECT_TRUE(QosFeasible(relay, loss_bound));
  const EdgeId edges[] = {e01, e12};
  EXPECT_TRUE(testing::LogSumFeasible(g, edges, loss_bound));
}

TEST(QosFeasibleTest, RejectsArtificialAndMismatchedEndpoints) {
  OverlayGraph g(3);
  g.AddEdge(0, 1, Metrics(10));
  const Demand d = MakeDemand(0, 2);
  const OverlayGraph aug = AugmentClique(g, 1);
  const Path via = Path::Relay(aug, d, *aug.FindEdge(0, 1), *aug.FindEdge(1, 2));
  EXPECT_TRUE(via.uses_artificial());
  EXPECT_FALSE(QosFeasible(via, d));
  EXPECT_THROW(QosFeasible(via, MakeDemand(1, 2)), ContractViolation);
  EXPECT_TRUE(QosFeasible(Path::Dummy(d, 410), d));
}

TEST(PathTest, DelaySums) {
  OverlayGraph g(3);
  const EdgeId a = g.AddEdge(0, 1, Metrics(12));
  const EdgeId b = g.AddEdge(1, 2, Metrics(30));
  const Demand d = MakeDemand(0, 2);
  EXPECT_DOUBLE_EQ(PathDelay(Path::Relay(g, d, a, b)), 42);
  EXPECT_DOUBLE_EQ(PathDelay(Path::Dummy(d, 410)), 410);
}

TEST(PathTest, RealPlusArtificialEdge) {
  OverlayGraph g(3);
  g.AddEdge(0, 1, Metrics(10));
  g.AddEdge(1, 2, Metrics(10));
  const OverlayGraph aug = AugmentClique(g, 2);
  ASSERT_DOUBLE_EQ(aug.big_m(), 41);
  const Path p = Path::Relay(aug, MakeDemand(0, 2), *aug.FindEdge(0, 1),
                             *aug.FindEdge(1, 2));
  EXPECT_DOUBLE_EQ(p.total_delay(), 20);
  const Path q = Path::Relay(aug, MakeDemand(2, 1), *aug.FindEdge(2, 0),
                             *aug.FindEdge(0, 1));
  EXPECT_DOUBLE_EQ(q.total_delay(), 51);
  EXPECT_TRUE(q.uses_artificial());
}

TEST(PathTest, ContractViolations) {
  OverlayGraph g(4);
  const EdgeId a = g.AddEdge(0, 1, Metrics(1));
  const EdgeId b = g.AddEdge(2, 3, Metrics(1));
  const EdgeId c = g.AddEdge(1, 3, Metrics(1));
  EXPECT_THROW(Path::Relay(g, MakeDemand(0, 3), a, b), ContractViolation);
  EXPECT_THROW(Path::Direct(g, MakeDemand(0, 3), a), ContractViolation);
  const EdgeId three[] = {a, c, b};
  EXPECT_THROW(Path::Over(g, MakeDemand(0, 3), three), ContractViolation);
  EXPECT_THROW(Path::Over(g, MakeDemand(0, 3), {}), ContractViolation);
}

TEST(PathTest, AggregatesMatchRecomputation) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    OverlayGraph g(4);
    const EdgeId a = g.AddEdge(0, 2, Metrics(500 * u(gen), 50 * u(gen),
                                             1 - 0.2 * u(gen)));
    const EdgeId b = g.AddEdge(2, 3, Metrics(500 * u(gen), 50 * u(gen),
                                             1 - 0.2 * u(gen)));
    const Path p = Path::Relay(g, MakeDemand(0, 3), a, b);
    EXPECT_EQ(p.total_delay(), g.edge(a).metrics.delay_ms + g.edge(b).metrics.delay_ms);
    EXPECT_EQ(p.total_jitter(),
              g.edge(a).metrics.jitter_ms + g.edge(b).metrics.jitter_ms);
    EXPECT_EQ(p.success_prob(),
              g.edge(a).metrics.success_prob * g.edge(b).metrics.success_prob);
    EXPECT_EQ(p.relay(), 2);
    EXPECT_EQ(p.hop_count(), 2);
  }
}

TEST(ResidualCapacityTest, FitsAndCommit) {
  OverlayGraph g(3);
  const EdgeId a = g.AddEdge(0, 1, Metrics(1, 0, 1, 100));
  const EdgeId b = g.AddEdge(1, 2, Metrics(1, 0, 1, 60));
  g.SetNodeLimit(1, 80);
  const Demand d = MakeDemand(0, 2, 50);
  const Path p = Path::Relay(g, d, a, b);
  ResidualCapacity residual(g);
  EXPECT_TRUE(residual.Fits(p, 50));
  residual.Commit(p, 50);
  EXPECT_DOUBLE_EQ(residual.edge(a), 50);
  EXPECT_DOUBLE_EQ(residual.edge(b), 10);
  EXPECT_DOUBLE_EQ(residual.node(1), 30);
  EXPECT_TRUE(std::isinf(residual.node(0)));
  EXPECT_FALSE(residual.Fits(p, 11));
  EXPECT_TRUE(residual.Fits(p, 10));
  EXPECT_TRUE(residual.Fits(Path::Dummy(d, 1), 1e9));
}

}  // namespace
}  // namespace cdnroute
