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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "cdnroute/errors.h"
#include "cdnroute/pricing.h"

namespace cdnroute {
namespace {

constexpr double kIntegralTolerance = 1e-9;
constexpr double kMassTolerance = 1e-12;

std::vector<int> OrderById(std::span<const Demand> demands) {
  std::vector<int> order(demands.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return demands[a].id < demands[b].id;
  });
  return order;
}

}  // namespace

const char* RoutingModeName(RoutingMode mode) {
  return mode == RoutingMode::kOverlay ? "overlay" : "direct";
}

RoutingMode ParseRoutingMode(const std::string& name) {
  if (name == "overlay") return RoutingMode::kOverlay;
  if (name == "direct") return RoutingMode::kDirect;
  throw InvalidInputError("unknown routing mode '" + name + "'");
}

CandidateSets BuildCandidates(const OverlayGraph& graph,
                              std::span<const Demand> demands,
                              RoutingMode mode) {
  CandidateSets sets;
  sets.reserve(demands.size());
  for (const Demand& d : demands) {
    sets.push_back(mode == RoutingMode::kOverlay ? EnumerateCandidates(graph, d)
                                                 : DirectCandidates(graph, d));
  }
  return sets;
}

ColumnGenerationResult ColumnGeneration(const OverlayGraph& graph,
                                        std::span<const Demand> demands,
                                        const SolverConfig& config) {
  return ColumnGeneration(graph, demands,
                          BuildCandidates(graph, demands, config.mode), config);
}

ColumnGenerationResult ColumnGeneration(const OverlayGraph& graph,
                                        std::span<const Demand> demands,
                                        CandidateSets candidates,
                                        const SolverConfig& config) {
  if (candidates.size() != demands.size()) {
    throw InvalidInputError("one candidate set per demand is required");
  }
  if (config.max_cg_iterations <= 0) {
    throw InvalidInputError("max_cg_iterations must be positive");
  }
  ColumnGenerationResult result{
      RestrictedMasterProblem::BuildInitial(graph, demands), {},
      std::move(candidates), 0, false};
  result.lp = result.rmp.Solve();
  while (result.iterations < config.max_cg_iterations) {
    ++result.iterations;
    int added = 0;
    for (size_t k = 0; k < demands.size(); ++k) {
      auto priced = PriceDemand(demands[k], result.candidates[k],
                                result.lp.duals, result.lp.duals.convexity[k],
                                config.reduced_cost_tolerance);
      if (!priced) continue;
      const int before = result.rmp.num_columns();
      result.rmp.AddColumn(static_cast<int>(k), priced->path);
      if (result.rmp.num_columns() > before) ++added;
    }
    if (added == 0) {
      result.certified = true;
      break;
    }
    result.lp = result.rmp.Solve();
  }
  return result;
}

int RoutingSolution::num_accepted() const {
  return static_cast<int>(std::count_if(
      routes.begin(), routes.end(), [](const auto& r) { return r.has_value(); }));
}

double RoutingObjective(std::span<const std::optional<Path>> routes,
                        double dummy_penalty) {
  double total = 0;
  for (const auto& route : routes) {
    total += route ? route->total_delay() : dummy_penalty;
  }
  return total;
}

std::vector<std::string> CheckRoutingSolution(const OverlayGraph& graph,
                                              std::span<const Demand> demands,
                                              const RoutingSolution& solution) {
  std::vector<std::string> problems;
  if (solution.routes.size() != demands.size()) {
    problems.push_back("route count differs from demand count");
    return problems;
  }
  if (demands.empty()) return problems;
  const OverlayGraph augmented =
      graph.augmented() ? graph : AugmentClique(graph, demands);
  ResidualCapacity residual(augmented);
  for (size_t k = 0; k < demands.size(); ++k) {
    const auto& route = solution.routes[k];
    if (!route) continue;
    const std::string tag = "demand " + std::to_string(demands[k].id) + ": ";
    if (route->is_dummy()) {
      problems.push_back(tag + "accepted on a dummy path");
      continue;
    }
    try {
      if (!QosFeasible(*route, demands[k])) {
        problems.push_back(tag + "route violates QoS");
      }
    } catch (const ContractViolation& e) {
      problems.push_back(tag + e.what());
      continue;
    }
    if (route->hop_count() > 2) problems.push_back(tag + "more than 2 hops");
    residual.Commit(*route, demands[k].rate_mbps);
  }
  constexpr double kSlack = 1e-6;
  for (EdgeId e = 0; e < augmented.num_edges(); ++e) {
    if (residual.edge(e) < -kSlack) {
      problems.push_back("edge " + std::to_string(augmented.edge(e).src) + "->" +
                         std::to_string(augmented.edge(e).dst) +
                         " over capacity");
    }
  }
  for (NodeId n = 0; n < augmented.num_nodes(); ++n) {
    if (residual.node(n) < -kSlack) {
      problems.push_back("node " + std::to_string(n) + " over its limit");
    }
  }
  if (solution.residual.edges().size() == residual.edges().size()) {
    for (size_t e = 0; e < residual.edges().size(); ++e) {
      double a = residual.edges()[e], b = solution.residual.edges()[e];
      if (!(a == b || std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)))) {
        problems.push_back("residual capacity of edge " + std::to_string(e) +
                           " is inconsistent");
        break;
      }
    }
  } else {
    problems.push_back("residual edge vector has the wrong size");
  }
  double expected = RoutingObjective(solution.routes, augmented.dummy_penalty());
  if (std::abs(expected - solution.objective) >
      1e-9 * std::max(1.0, std::abs(expected))) {
    problems.push_back("objective does not match its recomputation");
  }
  return problems;
}

RoutingSolution RandomizedRound(const RmpSolution& lp,
                                const RestrictedMasterProblem& rmp,
                                const OverlayGraph& graph, Rng& rng,
                                int max_passes) {
  std::span<const Demand> demands = rmp.demands();
  const int num_demands = static_cast<int>(demands.size());
  if (max_passes <= 0) max_passes = std::max(1, num_demands);

  // Columns with positive LP mass, per demand.
  std::vector<std::vector<int>> support(num_demands);
  for (int j = 0; j < rmp.num_columns(); ++j) {
    if (lp.y[j] > kMassTolerance) {
      support[rmp.columns()[j].demand_index].push_back(j);
    }
  }

  RoutingSolution solution;
  solution.routes.assign(num_demands, std::nullopt);
  solution.dummy_penalty = graph.dummy_penalty();
  solution.residual = ResidualCapacity(graph);
  solution.lp_objective = lp.objective;
  std::vector<bool> resolved(num_demands, false);
  const std::vector<int> order = OrderById(demands);

  for (int k : order) {
    for (int j : support[k]) {
      if (lp.y[j] < 1.0 - kIntegralTolerance) continue;
      const Path& path = rmp.columns()[j].path;
      if (path.is_dummy()) {
        resolved[k] = true;
      } else if (solution.residual.Fits(path, demands[k].rate_mbps)) {
        solution.residual.Commit(path, demands[k].rate_mbps);
        solution.routes[k] = path;
        resolved[k] = true;
      }
    }
  }

  int pass = 0;
  while (pass < max_passes &&
         std::find(resolved.begin(), resolved.end(), false) != resolved.end()) {
    ++pass;
    bool changed = false;
    for (int k : order) {
      if (resolved[k]) continue;
      double mass = 0;
      for (int j : support[k]) mass += lp.y[j];
      if (support[k].empty() || mass <= 0) {
        resolved[k] = true;
        changed = true;
        continue;
      }
      double draw = rng.Uniform01() * mass;
      int chosen = support[k].back();
      for (int j : support[k]) {
        draw -= lp.y[j];
        if (draw < 0) {
          chosen = j;
          break;
        }
      }
      const Path& path = rmp.columns()[chosen].path;
      if (path.is_dummy()) {
        resolved[k] = true;
        changed = true;
      } else if (solution.residual.Fits(path, demands[k].rate_mbps)) {
        solution.residual.Commit(path, demands[k].rate_mbps);
        solution.routes[k] = path;
        resolved[k] = true;
        changed = true;
      }
    }
    if (!changed) break;
  }
  solution.rounding_passes = pass;
  solution.objective = RoutingObjective(solution.routes, solution.dummy_penalty);
  return solution;
}

RoutingSolution Solve(const OverlayGraph& graph,
                      std::span<const Demand> demands,
                      const SolverConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  if (demands.empty()) {
    RoutingSolution empty;
    empty.residual = ResidualCapacity(graph);
    empty.certified = true;
    return empty;
  }
  const OverlayGraph augmented =
      graph.augmented() ? graph : AugmentClique(graph, demands);
  ColumnGenerationResult cg = ColumnGeneration(augmented, demands, config);
  Rng rng(config.seed);
  RoutingSolution solution = RandomizedRound(cg.lp, cg.rmp, augmented, rng,
                                             config.max_rounding_passes);
  solution.cg_iterations = cg.iterations;
  solution.certified = cg.certified;
  solution.runtime_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
  return solution;
}

}  // namespace cdnroute
