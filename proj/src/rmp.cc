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

#include "cdnroute/rmp.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "cdnroute/csv.h"
#include "cdnroute/errors.h"

namespace cdnroute {
namespace {

struct RowLayout {
  std::vector<int> edge_row;
  std::vector<int> node_row;
  std::vector<lp::RowSense> senses;
  std::vector<double> rhs;
};

RowLayout LayOutRows(const OverlayGraph& graph, int num_demands,
                     const ResidualCapacity& capacity) {
  RowLayout layout;
  layout.edge_row.assign(graph.num_edges(), -1);
  layout.node_row.assign(graph.num_nodes(), -1);
  auto add_row = [&](lp::RowSense sense, double rhs) {
    layout.senses.push_back(sense);
    layout.rhs.push_back(rhs);
    return static_cast<int>(layout.rhs.size()) - 1;
  };
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    if (graph.edge(e).artificial || std::isinf(capacity.edge(e))) continue;
    layout.edge_row[e] =
        add_row(lp::RowSense::kLessEqual, std::max(0.0, capacity.edge(e)));
  }
  for (NodeId n = 0; n < graph.num_nodes(); ++n) {
    if (std::isinf(capacity.node(n))) continue;
    layout.node_row[n] =
        add_row(lp::RowSense::kLessEqual, std::max(0.0, capacity.node(n)));
  }
  for (int k = 0; k < num_demands; ++k) add_row(lp::RowSense::kEqual, 1.0);
  return layout;
}

std::tuple<int, EdgeId, EdgeId> ColumnKey(int demand_index, const Path& path) {
  auto edges = path.edges();
  return {demand_index, edges.empty() ? -1 : edges[0],
          edges.size() < 2 ? -1 : edges[1]};
}

}  // namespace

RestrictedMasterProblem::RestrictedMasterProblem(
    const OverlayGraph& graph, std::span<const Demand> demands,
    const ResidualCapacity& capacity)
    : graph_(&graph),
      demands_(demands.begin(), demands.end()),
      lp_({}, {}) {
  RowLayout layout =
      LayOutRows(graph, static_cast<int>(demands.size()), capacity);
  edge_row_ = std::move(layout.edge_row);
  node_row_ = std::move(layout.node_row);
  first_demand_row_ =
      static_cast<int>(layout.rhs.size()) - static_cast<int>(demands.size());
  // Capacity rows are divided by their rhs so that slacks and path variables
  // share a scale; a 1e8 Mbps row would otherwise blur y at the 1e-8 level.
  rhs_ = layout.rhs;
  row_scale_.assign(rhs_.size(), 1.0);
  for (int r = 0; r < first_demand_row_; ++r) {
    if (rhs_[r] > 0) {
      row_scale_[r] = 1.0 / rhs_[r];
      layout.rhs[r] = 1.0;
    }
  }
  lp_ = lp::RevisedSimplex(std::move(layout.senses), std::move(layout.rhs));
}

RestrictedMasterProblem RestrictedMasterProblem::BuildInitial(
    const OverlayGraph& graph, std::span<const Demand> demands) {
  return BuildInitial(graph, demands, ResidualCapacity(graph));
}

RestrictedMasterProblem RestrictedMasterProblem::BuildInitial(
    const OverlayGraph& graph, std::span<const Demand> demands,
    const ResidualCapacity& capacity) {
  if (demands.empty()) {
    throw InvalidInputError("the master problem needs at least one demand");
  }
  if (!graph.augmented()) {
    throw InvalidInputError("the master problem needs an augmented graph");
  }
  RestrictedMasterProblem rmp(graph, demands, capacity);
  for (int k = 0; k < static_cast<int>(rmp.demands_.size()); ++k) {
    const Demand& demand = rmp.demands_[k];
    demand.Validate(graph.num_nodes());
    Path dummy = Path::Dummy(demand, graph.dummy_penalty());
    const int id = rmp.lp_.AddColumn(rmp.MakeLpColumn(k, dummy));
    rmp.lp_.SetStartingColumn(rmp.first_demand_row_ + k, id);
    rmp.column_index_[ColumnKey(k, dummy)] = id;
    rmp.columns_.push_back(RmpColumn{k, std::move(dummy), graph.dummy_penalty()});
  }
  return rmp;
}

lp::Column RestrictedMasterProblem::MakeLpColumn(int demand_index,
                                                 const Path& path,
                                                 bool scaled) const {
  lp::Column column;
  column.cost = path.total_delay();
  const double rate = demands_[demand_index].rate_mbps;
  if (!path.is_dummy()) {
    for (EdgeId e : path.edges()) {
      if (edge_row_[e] >= 0) column.entries.push_back({edge_row_[e], rate});
    }
    for (NodeId n : path.nodes()) {
      if (node_row_[n] >= 0) column.entries.push_back({node_row_[n], rate});
    }
    if (scaled) {
      for (lp::Entry& entry : column.entries) entry.value *= row_scale_[entry.row];
    }
  }
  column.entries.push_back({first_demand_row_ + demand_index, 1.0});
  return column;
}

std::optional<int> RestrictedMasterProblem::FindColumn(int demand_index,
                                                       const Path& path) const {
  auto it = column_index_.find(ColumnKey(demand_index, path));
  if (it == column_index_.end()) return std::nullopt;
  return it->second;
}

int RestrictedMasterProblem::AddColumn(int demand_index, const Path& path) {
  if (demand_index < 0 || demand_index >= static_cast<int>(demands_.size())) {
    throw ContractViolation("demand index out of range");
  }
  if (path.is_dummy()) {
    throw ContractViolation("dummy columns are only created by BuildInitial");
  }
  if (!QosFeasible(path, demands_[demand_index])) {
    throw ContractViolation("column for demand " +
                            std::to_string(demands_[demand_index].id) +
                            " violates its QoS constraints");
  }
  if (auto existing = FindColumn(demand_index, path)) return *existing;
  const int id = lp_.AddColumn(MakeLpColumn(demand_index, path));
  column_index_[ColumnKey(demand_index, path)] = id;
  columns_.push_back(RmpColumn{demand_index, path, path.total_delay()});
  return id;
}

RmpSolution RestrictedMasterProblem::Solve() {
  const int before = lp_.iterations();
  lp::Status status = lp_.Solve();
  if (status != lp::Status::kOptimal) {
    throw SolverError(std::string("master LP solve failed: ") +
                      lp::StatusName(status) + " (" +
                      std::to_string(lp_.num_rows()) + " rows, " +
                      std::to_string(lp_.num_columns()) + " columns, " +
                      std::to_string(lp_.iterations()) + " iterations)");
  }
  RmpSolution solution;
  solution.y = lp_.Primal();
  solution.objective = lp_.objective();
  solution.dual_objective = lp_.DualObjective();
  solution.simplex_iterations = lp_.iterations() - before;
  std::span<const double> pi = lp_.duals();
  solution.duals = DualPoint::Zero(*graph_, static_cast<int>(demands_.size()));
  // Capacity rows are <= rows of a minimization, so their row duals are
  // nonpositive; the published prices are their negation.
  for (EdgeId e = 0; e < graph_->num_edges(); ++e) {
    if (edge_row_[e] >= 0) {
      const int r = edge_row_[e];
      solution.duals.edge[e] = std::max(0.0, -pi[r] * row_scale_[r]);
    }
  }
  for (NodeId n = 0; n < graph_->num_nodes(); ++n) {
    if (node_row_[n] >= 0) {
      const int r = node_row_[n];
      solution.duals.node[n] = std::max(0.0, -pi[r] * row_scale_[r]);
    }
  }
  for (size_t k = 0; k < demands_.size(); ++k) {
    solution.duals.convexity[k] = pi[first_demand_row_ + k];
  }
  return solution;
}

double RestrictedMasterProblem::ReducedCost(int column,
                                            const DualPoint& duals) const {
  const RmpColumn& c = columns_[column];
  return PricedLength(c.path, demands_[c.demand_index].rate_mbps, duals) -
         duals.convexity[c.demand_index];
}

void RestrictedMasterProblem::WriteLp(std::ostream& out) const {
  auto term = [](double coef, int column) {
    return csv::FormatDouble(coef) + " y" + std::to_string(column);
  };
  auto write_terms = [&](const std::vector<std::string>& terms) {
    for (size_t i = 0; i < terms.size(); ++i) {
      out << (i == 0 ? " " : " + ") << terms[i];
      if (i % 6 == 5 && i + 1 < terms.size()) out << "\n   ";
    }
  };
  out << "\\ restricted master problem: " << columns_.size() << " columns, "
      << lp_.num_rows() << " rows\n";
  out << "Minimize\n obj:";
  std::vector<std::string> terms;
  for (int j = 0; j < num_columns(); ++j) terms.push_back(term(columns_[j].cost, j));
  write_terms(terms);
  out << "\nSubject To\n";

  std::vector<std::vector<std::string>> row_terms(lp_.num_rows());
  for (int j = 0; j < num_columns(); ++j) {
    const RmpColumn& c = columns_[j];
    for (const lp::Entry& e : MakeLpColumn(c.demand_index, c.path, false).entries) {
      row_terms[e.row].push_back(term(e.value, j));
    }
  }
  std::vector<std::string> row_names(lp_.num_rows());
  for (EdgeId e = 0; e < graph_->num_edges(); ++e) {
    if (edge_row_[e] < 0) continue;
    row_names[edge_row_[e]] = "cap_e" + std::to_string(graph_->edge(e).src) +
                              "_" + std::to_string(graph_->edge(e).dst);
  }
  for (NodeId n = 0; n < graph_->num_nodes(); ++n) {
    if (node_row_[n] >= 0) row_names[node_row_[n]] = "proc_n" + std::to_string(n);
  }
  for (size_t k = 0; k < demands_.size(); ++k) {
    row_names[first_demand_row_ + k] = "conv_d" + std::to_string(demands_[k].id);
  }
  for (int r = 0; r < lp_.num_rows(); ++r) {
    if (row_terms[r].empty()) continue;
    out << ' ' << row_names[r] << ':';
    write_terms(row_terms[r]);
    out << (lp_.sense(r) == lp::RowSense::kEqual ? " = " : " <= ")
        << csv::FormatDouble(rhs_[r]) << '\n';
  }
  out << "Bounds\n";
  for (int j = 0; j < num_columns(); ++j) out << " 0 <= y" << j << " <= 1\n";
  out << "End\n";
}

}  // namespace cdnroute
