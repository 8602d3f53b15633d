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

// Candidate generation and the column-generation pricing step.
//
// With at most one relay per route, the QoS-feasible path set of a demand is
// the direct edge plus one relay path per intermediate node, so it is
// enumerated once and the weighted constrained shortest path is found by a
// scan of that list. The scan is exact.

#ifndef CDNROUTE_PRICING_H_
#define CDNROUTE_PRICING_H_

#include <optional>
#include <span>
#include <vector>

#include "cdnroute/model.h"

namespace cdnroute {

// Dual prices of the master LP.
struct DualPoint {
  // Edge capacity duals (>= 0), indexed by EdgeId. Zero for edges without a
  // capacity row.
  std::vector<double> edge;
  // Node processing duals (>= 0), indexed by NodeId.
  std::vector<double> node;
  // Convexity duals (free), indexed by demand position.
  std::vector<double> convexity;

  static DualPoint Zero(const OverlayGraph& graph, int num_demands);
};

inline constexpr double kReducedCostTolerance = 1e-7;

// All QoS-feasible routes of `demand` over real edges: the direct edge first,
// then relay paths in ascending relay id.
std::vector<Path> EnumerateCandidates(const OverlayGraph& graph,
                                      const Demand& demand);

// Only the direct edge, if real and QoS-feasible.
std::vector<Path> DirectCandidates(const OverlayGraph& graph,
                                   const Demand& demand);

// sum_e (d_e + r * lambda_e) + sum_{visited i} r * nu_i.
double PricedLength(const Path& path, double rate, const DualPoint& duals);

struct PricedPath {
  Path path;
  double reduced_cost = 0;
  size_t candidate_index = 0;
};

// Minimizes PricedLength over `candidates` and returns the minimizer when its
// reduced cost (length - convexity_dual) is below -tolerance. Ties go to the
// earlier candidate. Throws ContractViolation on negative capacity duals.
std::optional<PricedPath> PriceDemand(const Demand& demand,
                                      std::span<const Path> candidates,
                                      const DualPoint& duals,
                                      double convexity_dual,
                                      double tolerance = kReducedCostTolerance);

}  // namespace cdnroute

#endif  // CDNROUTE_PRICING_H_
