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

// Column generation over QoS-feasible paths followed by randomized rounding
// to a single path (or rejection) per demand.

#ifndef CDNROUTE_SOLVER_H_
#define CDNROUTE_SOLVER_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cdnroute/model.h"
#include "cdnroute/random.h"
#include "cdnroute/rmp.h"

namespace cdnroute {

// overlay: direct edge plus single-relay paths. direct: the direct edge only.
enum class RoutingMode { kOverlay, kDirect };

const char* RoutingModeName(RoutingMode mode);
// Accepts "overlay" and "direct". Throws InvalidInputError otherwise.
RoutingMode ParseRoutingMode(const std::string& name);

// Candidate paths per demand position.
using CandidateSets = std::vector<std::vector<Path>>;

CandidateSets BuildCandidates(const OverlayGraph& graph,
                              std::span<const Demand> demands,
                              RoutingMode mode = RoutingMode::kOverlay);

struct SolverConfig {
  uint64_t seed = 1;
  double reduced_cost_tolerance = kReducedCostTolerance;
  int max_cg_iterations = 500;
  // 0 means one pass per demand.
  int max_rounding_passes = 0;
  RoutingMode mode = RoutingMode::kOverlay;
};

struct ColumnGenerationResult {
  RestrictedMasterProblem rmp;
  RmpSolution lp;
  CandidateSets candidates;
  int iterations = 0;
  // True when the last pricing pass found no improving column, which proves
  // LP optimality over the full candidate sets.
  bool certified = false;
};

// Starts from the dummy-only master problem and alternates LP solves with a
// pricing pass over every demand until no column prices below
// -reduced_cost_tolerance or the iteration cap is hit. `graph` must be
// augmented and must outlive the result.
ColumnGenerationResult ColumnGeneration(const OverlayGraph& graph,
                                        std::span<const Demand> demands,
                                        CandidateSets candidates,
                                        const SolverConfig& config);
ColumnGenerationResult ColumnGeneration(const OverlayGraph& graph,
                                        std::span<const Demand> demands,
                                        const SolverConfig& config);

// Integral routing: one path per accepted demand, nullopt for rejections.
struct RoutingSolution {
  std::vector<std::optional<Path>> routes;
  // Accepted path delays plus the dummy penalty per rejection.
  double objective = 0;
  double dummy_penalty = 0;
  ResidualCapacity residual;

  double lp_objective = 0;
  int cg_iterations = 0;
  bool certified = false;
  int rounding_passes = 0;
  double runtime_ms = 0;

  int num_accepted() const;
};

// Sum over demand positions, in order, of the route delay or the penalty.
double RoutingObjective(std::span<const std::optional<Path>> routes,
                        double dummy_penalty);

// Empty when the solution is consistent: accepted routes are QoS-feasible
// and belong to their demand, edge and node capacities hold (absolute slack
// 1e-6), the residual matches a recomputation and the objective matches
// RoutingObjective. Otherwise one message per violation.
std::vector<std::string> CheckRoutingSolution(const OverlayGraph& graph,
                                              std::span<const Demand> demands,
                                              const RoutingSolution& solution);

// Turns the fractional master solution into a single path per demand.
//
// Demands whose LP mass already sits on one real column are committed first.
// Then, in passes over the remaining demands in ascending id, a column is
// drawn with probability y_p. A dummy draw rejects the demand for good. A
// real draw is committed when it fits the residual capacities and otherwise
// left for the next pass. Passes stop once one changes nothing, and whatever
// is still undecided is rejected.
RoutingSolution RandomizedRound(const RmpSolution& lp,
                                const RestrictedMasterProblem& rmp,
                                const OverlayGraph& graph, Rng& rng,
                                int max_passes = 0);

// Augments `graph` when needed, runs column generation and rounding.
// Deterministic for a given (graph, demands, config).
RoutingSolution Solve(const OverlayGraph& graph,
                      std::span<const Demand> demands,
                      const SolverConfig& config = {});

}  // namespace cdnroute

#endif  // CDNROUTE_SOLVER_H_
