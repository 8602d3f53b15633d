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

// Exact integer routing by branch-and-bound over the enumerated candidate
// paths. Meant as a benchmark at desk scale (a dozen nodes, a few dozen
// demands); the search is exponential in the worst case.

#ifndef CDNROUTE_EXACT_H_
#define CDNROUTE_EXACT_H_

#include <cstdint>
#include <span>

#include "cdnroute/model.h"
#include "cdnroute/solver.h"

namespace cdnroute {

struct ExactLimits {
  int64_t max_nodes = 1'000'000;
  double time_limit_s = 300;
};

struct ExactSolution {
  RoutingSolution routing;
  // False when a limit stopped the search; `routing` is then the best
  // incumbent found.
  bool optimal = false;
  int64_t nodes_explored = 0;
  int64_t nodes_pruned = 0;
  double root_lp_objective = 0;
};

// Minimizes accepted path delay plus the dummy penalty per rejection subject
// to edge and node capacities. Each branch-and-bound node solves the master
// LP over the non-forbidden candidates of its free demands against the
// residual capacity left by its fixed demands. Branching is on the most
// fractional real column (ties: lowest column id): first fix the demand to
// it, then forbid it.
ExactSolution SolveExact(const OverlayGraph& graph,
                         std::span<const Demand> demands,
                         const CandidateSets& candidates,
                         const ExactLimits& limits = {});

// Augments the graph when needed and enumerates candidates for `mode`.
ExactSolution SolveExact(const OverlayGraph& graph,
                         std::span<const Demand> demands,
                         const ExactLimits& limits = {},
                         RoutingMode mode = RoutingMode::kOverlay);

}  // namespace cdnroute

#endif  // CDNROUTE_EXACT_H_
