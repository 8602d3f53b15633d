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


#include "cdnroute/solver.h"

#include <gtest/gtest.h>

#include "cdnroute/errors.h"
#include "cdnroute/exact.h"
#include "cdnroute/scenario.h"
#include "oracles.h"

namespace cdnroute {
namespace {

TEST(RoutingModeTest, Parse) {
  EXPECT_EQ(ParseRoutingMode("overlay"), RoutingMode::kOverlay);
  EXPECT_EQ(ParseRoutingMode("direct"), RoutingMode::kDirect);
  EXPECT_STREQ(RoutingModeName(RoutingMode::kDirect), "direct");
  EXPECT_THROW(ParseRoutingMode("both"), InvalidInputError);
}

TEST(ColumnGenerationTest, UncongestedConvergesToMinDelays) {
  testing::InstanceShape shape;
  shape.node_limit_mbps = 1e9;
  shape.capacity_min_mbps = 1e8;
  shape.capacity_max_mbps = 1e8;
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = testing::RandomInstance(seed, shape);
    const auto cg = ColumnGeneration(inst.graph, inst.demands, {});
    ASSERT_TRUE(cg.certified);
    double expected = 0;
    for (size_t k = 0; k < inst.demands.size(); ++k) {
      double best = inst.graph.dummy_penalty();
      for (const Path& p : cg.candidates[k]) best = std::min(best, p.total_delay());
      expected += best;
    }
    EXPECT_NEAR(cg.lp.objective, expected, 1e-9 * expected);
    for (double y : cg.lp.y) EXPECT_TRUE(y < 1e-9 || y > 1 - 1e-9);
  }
}

TEST(ColumnGenerationTest, NoFeasibleCandidateStaysOnDummy) {
  OverlayGraph g(2);
  g.AddEdge(0, 1, {10, 100, 100, 1});
  const std::vector<Demand> demands = {{0, 0, 1, 5, 50, 0}};
  const OverlayGraph aug = AugmentClique(g, demands);
  const auto cg = ColumnGeneration(aug, demands, {});
  EXPECT_TRUE(cg.certified);
  ASSERT_EQ(cg.rmp.num_columns(), 1);
  EXPECT_DOUBLE_EQ(cg.lp.y[0], 1);
  const RoutingSolution sol = Solve(g, demands);
  EXPECT_FALSE(sol.routes[0].has_value());
}

TEST(ColumnGenerationTest, MatchesOneShotFullLp) {
  for (uint64_t seed = 0; seed < 25; ++seed) {
    const auto inst = testing::RandomInstance(seed, {8, 8, 10, 10});
    const auto cg = ColumnGeneration(inst.graph, inst.demands, {});
    ASSERT_TRUE(cg.certified);
    auto full = RestrictedMasterProblem::BuildInitial(inst.graph, inst.demands);
    for (size_t k = 0; k < inst.demands.size(); ++k) {
      for (const Path& p : cg.candidates[k]) full.AddColumn(static_cast<int>(k), p);
    }
    const RmpSolution lp = full.Solve();
    EXPECT_NEAR(cg.lp.objective, lp.objective, 1e-9 * lp.objective)
        << "seed " << seed;
  }
}

TEST(ColumnGenerationTest, MatchesVertexEnumerationOnTinyInstances) {
  int checked = 0;
  for (uint64_t seed = 0; checked < 15 && seed < 200; ++seed) {
    const auto inst = testing::RandomInstance(seed, {4, 4, 2, 2, 0.6});
    const CandidateSets candidates = BuildCandidates(inst.graph, inst.demands);
    size_t vars = inst.demands.size();
    for (const auto& c : candidates) vars += c.size();
    if (vars > 9) continue;
    ++checked;
    const auto cg = ColumnGeneration(inst.graph, inst.demands, {});
    const auto oracle =
        testing::FullPathLpByEnumeration(inst.graph, inst.demands, candidates);
    ASSERT_TRUE(oracle.feasible);
    EXPECT_NEAR(cg.lp.objective, oracle.objective, 1e-7 * oracle.objective);
  }
  EXPECT_GE(checked, 5);
}

TEST(ColumnGenerationTest, IterationCapClearsCertificate) {
  const auto inst = testing::RandomInstance(3);
  SolverConfig config;
  config.max_cg_iterations = 1;
  const auto cg = ColumnGeneration(inst.graph, inst.demands, config);
  EXPECT_FALSE(cg.certified);
  EXPECT_EQ(cg.iterations, 1);
}

// One demand, two parallel relays with identical metrics.
struct Split {
  OverlayGraph graph;
  std::vector<Demand> demands;
  Split(double capacity) {
    OverlayGraph g(4);
    g.AddEdge(0, 1, {5, 0, capacity, 1});
    g.AddEdge(1, 3, {5, 0, capacity, 1});
    g.AddEdge(0, 2, {5, 0, capacity, 1});
    g.AddEdge(2, 3, {5, 0, capacity, 1});
    demands = {{0, 0, 3, 10, kInfinity, 0}};
    graph = AugmentClique(g, demands);
  }
};

TEST(RandomizedRoundTest, IntegralInputIsReproduced) {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    testing::InstanceShape shape;
    shape.node_limit_mbps = 1e9;
    shape.capacity_min_mbps = 1e8;
    shape.capacity_max_mbps = 1e8;
    const auto inst = testing::RandomInstance(seed, shape);
    auto cg = ColumnGeneration(inst.graph, inst.demands, {});
    Rng rng(seed);
    const RoutingSolution sol =
        RandomizedRound(cg.lp, cg.rmp, inst.graph, rng);
    for (int j = 0; j < cg.rmp.num_columns(); ++j) {
      if (cg.lp.y[j] < 0.5) continue;
      const RmpColumn& col = cg.rmp.columns()[j];
      if (col.path.is_dummy()) {
        EXPECT_FALSE(sol.routes[col.demand_index].has_value());
      } else {
        EXPECT_EQ(sol.routes[col.demand_index], col.path);
      }
    }
    EXPECT_NEAR(sol.objective, cg.lp.objective, 1e-9 * sol.objective);
  }
}

TEST(RandomizedRoundTest, HalfSplitFrequencies) {
  Split s(100);
  auto rmp = RestrictedMasterProblem::BuildInitial(s.graph, s.demands);
  const int a = rmp.AddColumn(0, Path::Relay(s.graph, s.demands[0],
                                             *s.graph.FindEdge(0, 1),
                                             *s.graph.FindEdge(1, 3)));
  const int b = rmp.AddColumn(0, Path::Relay(s.graph, s.demands[0],
                                             *s.graph.FindEdge(0, 2),
                                             *s.graph.FindEdge(2, 3)));
  RmpSolution lp;
  lp.y = {0, 0.5, 0.5};
  const int trials = 10'000;
  int first = 0;
  for (int t = 0; t < trials; ++t) {
    Rng rng(t);
    const RoutingSolution sol = RandomizedRound(lp, rmp, s.graph, rng);
    ASSERT_TRUE(sol.routes[0].has_value());
    if (*sol.routes[0] == rmp.columns()[a].path) ++first;
    else EXPECT_EQ(*sol.routes[0], rmp.columns()[b].path);
  }
  EXPECT_NEAR(first / double(trials), 0.5, 0.02);
}

TEST(RandomizedRoundTest, SharedEdgeNeverOverbooked) {
  OverlayGraph g(4);
  g.AddEdge(0, 1, {5, 0, 10, 1});
  g.AddEdge(1, 3, {5, 0, 100, 1});
  g.AddEdge(1, 2, {5, 0, 100, 1});
  g.AddEdge(0, 3, {50, 0, 10, 1});
  g.AddEdge(0, 2, {50, 0, 10, 1});
  const std::vector<Demand> demands = {{0, 0, 3, 10, kInfinity, 0},
                                       {1, 0, 2, 10, kInfinity, 0}};
  const OverlayGraph aug = AugmentClique(g, demands);
  auto rmp = RestrictedMasterProblem::BuildInitial(aug, demands);
  const EdgeId shared = *aug.FindEdge(0, 1);
  const int a = rmp.AddColumn(0, Path::Relay(aug, demands[0], shared, *aug.FindEdge(1, 3)));
  const int b = rmp.AddColumn(1, Path::Relay(aug, demands[1], shared, *aug.FindEdge(1, 2)));
  RmpSolution lp;
  lp.y.assign(rmp.num_columns(), 0);
  lp.y[0] = 0.5;
  lp.y[1] = 0.5;
  lp.y[a] = 0.5;
  lp.y[b] = 0.5;
  for (int t = 0; t < 500; ++t) {
    Rng rng(t);
    const RoutingSolution sol = RandomizedRound(lp, rmp, aug, rng);
    EXPECT_LE(sol.num_accepted(), 1);
    EXPECT_TRUE(CheckRoutingSolution(aug, demands, sol).empty());
  }
}

TEST(SolveTest, EmptyDemands) {
  OverlayGraph g(2);
  g.AddEdge(0, 1, {1, 0, 1, 1});
  const RoutingSolution sol = Solve(g, {});
  EXPECT_TRUE(sol.routes.empty());
  EXPECT_EQ(sol.objective, 0);
}

TEST(SolveTest, DeterministicForSeed) {
  const auto inst = testing::RandomInstance(9);
  SolverConfig config;
  config.seed = 77;
  const RoutingSolution a = Solve(inst.graph, inst.demands, config);
  const RoutingSolution b = Solve(inst.graph, inst.demands, config);
  EXPECT_EQ(a.routes, b.routes);
  EXPECT_EQ(a.objective, b.objective);
  EXPECT_EQ(a.residual, b.residual);
}

TEST(SolveTest, FeasibleAndSandwiched) {
  for (uint64_t seed = 0; seed < 15; ++seed) {
    const auto inst = testing::RandomInstance(seed, {6, 8, 6, 12});
    const RoutingSolution sol = Solve(inst.graph, inst.demands);
    EXPECT_TRUE(CheckRoutingSolution(inst.graph, inst.demands, sol).empty());
    const ExactSolution exact = SolveExact(inst.graph, inst.demands);
    ASSERT_TRUE(exact.optimal);
    const double tol = 1e-6 * exact.routing.objective;
    EXPECT_LE(sol.lp_objective, exact.routing.objective + tol);
    EXPECT_LE(exact.routing.objective, sol.objective + tol);
    EXPECT_GE(exact.routing.num_accepted(), sol.num_accepted());
  }
}

TEST(SolveTest, TelcoInstanceCompletes) {
  TelcoProfile profile;
  const Trace trace = GenerateTelcoTrace(profile, 1, 1);
  const auto demands = GenerateTelcoDemands(profile, 1);
  const RoutingSolution sol = Solve(GraphForEpoch(trace, 0), demands);
  EXPECT_EQ(sol.routes.size(), 82u);
  EXPECT_TRUE(sol.certified);
}

TEST(CheckRoutingSolutionTest, DetectsViolations) {
  Split s(15);
  RoutingSolution sol = Solve(s.graph, s.demands);
  ASSERT_TRUE(CheckRoutingSolution(s.graph, s.demands, sol).empty());
  RoutingSolution tampered = sol;
  tampered.objective += 1;
  EXPECT_FALSE(CheckRoutingSolution(s.graph, s.demands, tampered).empty());
  std::vector<Demand> heavier = s.demands;
  heavier[0].rate_mbps = 20;
  EXPECT_FALSE(CheckRoutingSolution(s.graph, heavier, sol).empty());
}

}  // namespace
}  // namespace cdnroute
