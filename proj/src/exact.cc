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

#include "cdnroute/exact.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <vector>

#include "cdnroute/errors.h"
#include "cdnroute/rmp.h"

namespace cdnroute {
namespace {

constexpr int kFree = -2;
constexpr int kRejected = -1;
constexpr double kIntegrality = 1e-6;

struct Node {
  // Per demand: kFree, kRejected or the index of the fixed candidate.
  std::vector<int> assignment;
  std::vector<std::vector<bool>> forbidden;
  ResidualCapacity residual;
};

class BranchAndBound {
 public:
  BranchAndBound(const OverlayGraph& graph, std::span<const Demand> demands,
                 const CandidateSets& candidates, const ExactLimits& limits)
      : graph_(graph),
        demands_(demands),
        candidates_(candidates),
        limits_(limits),
        start_(std::chrono::steady_clock::now()) {}

  ExactSolution Run() {
    const int num_demands = static_cast<int>(demands_.size());
    best_assignment_.assign(num_demands, kRejected);
    best_objective_ = ObjectiveOf(best_assignment_);
    GreedyIncumbent();

    Node root;
    root.assignment.assign(num_demands, kFree);
    for (const auto& c : candidates_) root.forbidden.emplace_back(c.size(), false);
    root.residual = ResidualCapacity(graph_);

    bool complete = true;
    std::vector<Node> stack;
    stack.push_back(std::move(root));
    bool at_root = true;
    while (!stack.empty()) {
      if (result_.nodes_explored >= limits_.max_nodes || TimedOut()) {
        complete = false;
        break;
      }
      Node node = std::move(stack.back());
      stack.pop_back();
      ++result_.nodes_explored;
      Expand(std::move(node), stack, at_root);
      at_root = false;
    }

    result_.optimal = complete;
    RoutingSolution& routing = result_.routing;
    routing.routes.assign(num_demands, std::nullopt);
    routing.residual = ResidualCapacity(graph_);
    for (int k = 0; k < num_demands; ++k) {
      if (best_assignment_[k] < 0) continue;
      const Path& path = candidates_[k][best_assignment_[k]];
      routing.routes[k] = path;
      routing.residual.Commit(path, demands_[k].rate_mbps);
    }
    routing.dummy_penalty = graph_.dummy_penalty();
    routing.objective = RoutingObjective(routing.routes, routing.dummy_penalty);
    routing.lp_objective = result_.root_lp_objective;
    routing.certified = complete;
    routing.runtime_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start_)
                             .count();
    return std::move(result_);
  }

 private:
  bool TimedOut() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
               .count() > limits_.time_limit_s;
  }

  double ObjectiveOf(const std::vector<int>& assignment) const {
    double total = 0;
    for (size_t k = 0; k < assignment.size(); ++k) {
      total += assignment[k] >= 0 ? candidates_[k][assignment[k]].total_delay()
                                  : graph_.dummy_penalty();
    }
    return total;
  }

  void Offer(const std::vector<int>& assignment) {
    const double objective = ObjectiveOf(assignment);
    if (objective < best_objective_) {
      best_objective_ = objective;
      best_assignment_ = assignment;
    }
  }

  // Cheapest fitting candidate per demand in ascending id order.
  void GreedyIncumbent() {
    std::vector<int> order(demands_.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return demands_[a].id < demands_[b].id;
    });
    ResidualCapacity residual(graph_);
    std::vector<int> assignment(demands_.size(), kRejected);
    for (int k : order) {
      int best = -1;
      for (size_t c = 0; c < candidates_[k].size(); ++c) {
        const Path& path = candidates_[k][c];
        if (!residual.Fits(path, demands_[k].rate_mbps)) continue;
        if (best < 0 || path.total_delay() < candidates_[k][best].total_delay()) {
          best = static_cast<int>(c);
        }
      }
      if (best >= 0) {
        residual.Commit(candidates_[k][best], demands_[k].rate_mbps);
        assignment[k] = best;
      }
    }
    Offer(assignment);
  }

  void Expand(Node node, std::vector<Node>& stack, bool at_root) {
    double fixed_cost = 0;
    std::vector<int> free_demands;
    for (size_t k = 0; k < node.assignment.size(); ++k) {
      if (node.assignment[k] == kFree) {
        free_demands.push_back(static_cast<int>(k));
      } else {
        fixed_cost += node.assignment[k] >= 0
                          ? candidates_[k][node.assignment[k]].total_delay()
                          : graph_.dummy_penalty();
      }
    }
    if (free_demands.empty()) {
      Offer(node.assignment);
      return;
    }

    std::vector<Demand> sub_demands;
    for (int k : free_demands) sub_demands.push_back(demands_[k]);
    RestrictedMasterProblem rmp =
        RestrictedMasterProblem::BuildInitial(graph_, sub_demands, node.residual);
    // column id -> (demand, candidate index); dummies are -1.
    std::vector<std::pair<int, int>> origin(rmp.num_columns(), {-1, -1});
    for (size_t i = 0; i < free_demands.size(); ++i) {
      origin[i] = {free_demands[i], kRejected};
    }
    for (size_t i = 0; i < free_demands.size(); ++i) {
      const int k = free_demands[i];
      for (size_t c = 0; c < candidates_[k].size(); ++c) {
        const Path& path = candidates_[k][c];
        if (node.forbidden[k][c] ||
            !node.residual.Fits(path, demands_[k].rate_mbps)) {
          continue;
        }
        rmp.AddColumn(static_cast<int>(i), path);
        origin.emplace_back(k, static_cast<int>(c));
      }
    }
    const RmpSolution lp = rmp.Solve();
    const double bound = fixed_cost + lp.objective;
    if (at_root) result_.root_lp_objective = bound;
    if (bound >= best_objective_ - 1e-12 * std::abs(best_objective_)) {
      ++result_.nodes_pruned;
      return;
    }

    int branch_column = -1;
    double best_fractionality = 0;
    for (int j = 0; j < rmp.num_columns(); ++j) {
      if (origin[j].second < 0) continue;
      const double y = lp.y[j];
      if (y <= kIntegrality || y >= 1 - kIntegrality) continue;
      const double fractionality = std::min(y, 1 - y);
      if (fractionality > best_fractionality) {
        best_fractionality = fractionality;
        branch_column = j;
      }
    }

    if (branch_column < 0) {
      std::vector<int> assignment = node.assignment;
      for (int j = 0; j < rmp.num_columns(); ++j) {
        if (lp.y[j] >= 1 - kIntegrality) assignment[origin[j].first] = origin[j].second;
      }
      for (int k : free_demands) {
        if (assignment[k] == kFree) assignment[k] = kRejected;
      }
      if (Feasible(assignment)) {
        Offer(assignment);
        return;
      }
      // Numerically integral but infeasible after rounding; fall back to
      // branching on any column with mass.
      for (int j = 0; j < rmp.num_columns(); ++j) {
        if (origin[j].second >= 0 && lp.y[j] > kIntegrality) {
          branch_column = j;
          break;
        }
      }
      if (branch_column < 0) return;
    }

    const auto [k, c] = origin[branch_column];
    Node forbid = node;
    forbid.forbidden[k][c] = true;
    stack.push_back(std::move(forbid));

    Node fix = std::move(node);
    fix.assignment[k] = c;
    fix.residual.Commit(candidates_[k][c], demands_[k].rate_mbps);
    stack.push_back(std::move(fix));
  }

  bool Feasible(const std::vector<int>& assignment) const {
    ResidualCapacity residual(graph_);
    for (size_t k = 0; k < assignment.size(); ++k) {
      if (assignment[k] < 0) continue;
      const Path& path = candidates_[k][assignment[k]];
      if (!residual.Fits(path, demands_[k].rate_mbps)) return false;
      residual.Commit(path, demands_[k].rate_mbps);
    }
    return true;
  }

  const OverlayGraph& graph_;
  std::span<const Demand> demands_;
  const CandidateSets& candidates_;
  ExactLimits limits_;
  std::chrono::steady_clock::time_point start_;

  std::vector<int> best_assignment_;
  double best_objective_ = 0;
  ExactSolution result_;
};

}  // namespace

ExactSolution SolveExact(const OverlayGraph& graph,
                         std::span<const Demand> demands,
                         const CandidateSets& candidates,
                         const ExactLimits& limits) {
  if (candidates.size() != demands.size()) {
    throw InvalidInputError("one candidate set per demand is required");
  }
  if (demands.empty()) {
    ExactSolution empty;
    empty.optimal = true;
    empty.routing.residual = ResidualCapacity(graph);
    empty.routing.certified = true;
    return empty;
  }
  if (!graph.augmented()) {
    throw InvalidInputError("exact search needs an augmented graph");
  }
  return BranchAndBound(graph, demands, candidates, limits).Run();
}

ExactSolution SolveExact(const OverlayGraph& graph,
                         std::span<const Demand> demands,
                         const ExactLimits& limits, RoutingMode mode) {
  if (demands.empty()) return SolveExact(graph, demands, CandidateSets{}, limits);
  const OverlayGraph augmented =
      graph.augmented() ? graph : AugmentClique(graph, demands);
  return SolveExact(augmented, demands,
                    BuildCandidates(augmented, demands, mode), limits);
}

}  // namespace cdnroute
