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

// The restricted master problem: the path-based routing LP over the columns
// generated so far,
//
//   min  sum_p d_p y_p
//   s.t. sum_{p crossing e}   r_k y_p <= b_e   for every capacitated edge
//        sum_{p visiting i}   r_k y_p <= N_i   for every limited node
//        sum_{p of demand k}  y_p      = 1     for every demand
//        y >= 0
//
// Every demand owns a dummy column with zero capacity coefficients and cost
// equal to the graph's dummy penalty, so the LP is always feasible.
// Rates and capacities are in Mbps and costs in ms, so capacity duals are in
// ms per Mbps.

#ifndef CDNROUTE_RMP_H_
#define CDNROUTE_RMP_H_

#include <map>
#include <ostream>
#include <span>
#include <tuple>
#include <vector>

#include "cdnroute/model.h"
#include "cdnroute/pricing.h"
#include "cdnroute/simplex.h"

namespace cdnroute {

struct RmpColumn {
  // Position of the demand in the RMP's demand list.
  int demand_index = 0;
  Path path;
  double cost = 0;
};

struct RmpSolution {
  // One value per column, in column id order.
  std::vector<double> y;
  double objective = 0;
  double dual_objective = 0;
  DualPoint duals;
  int simplex_iterations = 0;
};

class RestrictedMasterProblem {
 public:
  // One dummy column per demand; column id i is the dummy of demand i. The
  // graph must be augmented and outlive this object. Throws
  // InvalidInputError when `demands` is empty.
  static RestrictedMasterProblem BuildInitial(const OverlayGraph& graph,
                                              std::span<const Demand> demands);
  // Same, against residual capacities instead of the graph's own.
  static RestrictedMasterProblem BuildInitial(const OverlayGraph& graph,
                                              std::span<const Demand> demands,
                                              const ResidualCapacity& capacity);

  // Returns the new column id, or the existing id if this (demand, path)
  // pair is already present. Throws ContractViolation for dummy or
  // QoS-infeasible paths.
  int AddColumn(int demand_index, const Path& path);
  std::optional<int> FindColumn(int demand_index, const Path& path) const;

  // Throws SolverError if the simplex does not reach optimality.
  RmpSolution Solve();

  std::span<const Demand> demands() const { return demands_; }
  std::span<const RmpColumn> columns() const { return columns_; }
  int num_columns() const { return static_cast<int>(columns_.size()); }
  int num_rows() const { return lp_.num_rows(); }
  int dummy_column(int demand_index) const { return demand_index; }
  const OverlayGraph& graph() const { return *graph_; }

  // Reduced cost of a column under `duals`:
  // cost + r_k * (sum lambda_e + sum nu_i) - sigma_k.
  double ReducedCost(int column, const DualPoint& duals) const;

  // CPLEX LP text format, for cross-checking against external solvers.
  void WriteLp(std::ostream& out) const;

 private:
  RestrictedMasterProblem(const OverlayGraph& graph,
                          std::span<const Demand> demands,
                          const ResidualCapacity& capacity);
  lp::Column MakeLpColumn(int demand_index, const Path& path,
                          bool scaled = true) const;

  const OverlayGraph* graph_;
  std::vector<Demand> demands_;
  std::vector<int> edge_row_;  // EdgeId -> row, -1 when uncapacitated
  std::vector<int> node_row_;  // NodeId -> row, -1 when unlimited
  int first_demand_row_ = 0;
  std::vector<double> rhs_;        // unscaled
  std::vector<double> row_scale_;  // multiplier applied to each row
  lp::RevisedSimplex lp_;
  std::vector<RmpColumn> columns_;
  std::map<std::tuple<int, EdgeId, EdgeId>, int> column_index_;
};

}  // namespace cdnroute

#endif  // CDNROUTE_RMP_H_
