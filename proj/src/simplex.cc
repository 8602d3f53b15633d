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

#include "cdnroute/simplex.h"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cdnroute::lp {
namespace {

constexpr double kRatioTie = 1e-12;
constexpr double kDegenerateStep = 1e-12;

}  // namespace

const char* StatusName(Status status) {
  switch (status) {
    case Status::kOptimal:
      return "optimal";
    case Status::kIterationLimit:
      return "iteration-limit";
    case Status::kInfeasibleStart:
      return "infeasible-start";
    case Status::kUnbounded:
      return "unbounded";
    case Status::kSingularBasis:
      return "singular-basis";
  }
  return "unknown";
}

RevisedSimplex::RevisedSimplex(std::vector<RowSense> senses,
                               std::vector<double> rhs, Options options)
    : senses_(std::move(senses)),
      rhs_(std::move(rhs)),
      options_(options),
      basis_(rhs_.size(), -1),
      basic_pos_(rhs_.size(), -1),
      duals_(rhs_.size(), 0.0) {
  if (senses_.size() != rhs_.size()) {
    throw std::invalid_argument("row sense and rhs sizes differ");
  }
  for (size_t r = 0; r < senses_.size(); ++r) {
    if (senses_[r] == RowSense::kLessEqual) {
      basis_[r] = static_cast<int>(r);
      basic_pos_[r] = static_cast<int>(r);
    }
  }
}

int RevisedSimplex::AddColumn(Column column) {
  for (const Entry& e : column.entries) {
    if (e.row < 0 || e.row >= num_rows()) {
      throw std::out_of_range("column entry row out of range");
    }
  }
  columns_.push_back(std::move(column));
  basic_pos_.push_back(-1);
  return num_columns() - 1;
}

void RevisedSimplex::SetStartingColumn(int row, int column) {
  if (started_) throw std::logic_error("starting basis is already in use");
  if (senses_[row] != RowSense::kEqual) {
    throw std::invalid_argument("starting columns are for equality rows");
  }
  if (basis_[row] >= 0) basic_pos_[basis_[row]] = -1;
  const int var = num_rows() + column;
  basis_[row] = var;
  basic_pos_[var] = row;
}

double RevisedSimplex::VarCost(int var) const {
  return var < num_rows() ? 0.0 : columns_[var - num_rows()].cost;
}

void RevisedSimplex::ApplyColumn(int var, Eigen::VectorXd& alpha) const {
  alpha.setZero(num_rows());
  if (var < num_rows()) {
    alpha = binv_.col(var);
    return;
  }
  for (const Entry& e : columns_[var - num_rows()].entries) {
    alpha.noalias() += e.value * binv_.col(e.row);
  }
}

bool RevisedSimplex::Refactor() {
  const int m = num_rows();
  Eigen::MatrixXd basis_matrix = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    const int var = basis_[i];
    if (var < m) {
      basis_matrix(var, i) = 1.0;
    } else {
      for (const Entry& e : columns_[var - m].entries) {
        basis_matrix(e.row, i) += e.value;
      }
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(basis_matrix);
  if (!lu.isInvertible()) return false;
  binv_ = lu.inverse();
  pivots_since_refactor_ = 0;
  return binv_.allFinite();
}

void RevisedSimplex::RecomputeSolution() {
  const int m = num_rows();
  Eigen::Map<const Eigen::VectorXd> b(rhs_.data(), m);
  x_basic_ = binv_ * b;
  Eigen::VectorXd cost_basic(m);
  for (int i = 0; i < m; ++i) cost_basic[i] = VarCost(basis_[i]);
  Eigen::VectorXd pi = binv_.transpose() * cost_basic;
  duals_.assign(pi.data(), pi.data() + m);
}

double RevisedSimplex::ReducedCost(int column) const {
  const Column& c = columns_[column];
  double d = c.cost;
  for (const Entry& e : c.entries) d -= duals_[e.row] * e.value;
  return d;
}

int RevisedSimplex::ChooseEntering(bool bland, double& reduced_cost) const {
  const int m = num_rows();
  const double tol = options_.optimality_tolerance;
  int best = -1;
  double best_d = -tol;
  for (int r = 0; r < m; ++r) {
    if (senses_[r] != RowSense::kLessEqual || basic_pos_[r] >= 0) continue;
    double d = -duals_[r];
    if (d < best_d) {
      best = r;
      best_d = d;
      if (bland) break;
    }
  }
  if (!(bland && best >= 0)) {
    for (int j = 0; j < num_columns(); ++j) {
      if (basic_pos_[m + j] >= 0) continue;
      double d = ReducedCost(j);
      if (d < best_d) {
        best = m + j;
        best_d = d;
        if (bland) break;
      }
    }
  }
  reduced_cost = best_d;
  return best;
}

Status RevisedSimplex::Solve() {
  const int m = num_rows();
  for (int r = 0; r < m; ++r) {
    if (basis_[r] < 0) return Status::kInfeasibleStart;
  }
  started_ = true;
  if (!Refactor()) return Status::kSingularBasis;
  RecomputeSolution();
  for (int i = 0; i < m; ++i) {
    if (x_basic_[i] < -options_.feasibility_tolerance) {
      return Status::kInfeasibleStart;
    }
  }

  bool bland = false;
  int degenerate_run = 0;
  Eigen::VectorXd alpha(m);
  Eigen::RowVectorXd pivot_row(m);
  while (true) {
    double entering_d = 0;
    const int entering = ChooseEntering(bland, entering_d);
    if (entering < 0) {
      if (pivots_since_refactor_ > 0) {
        // Confirm optimality on a fresh factorization.
        if (!Refactor()) return Status::kSingularBasis;
        RecomputeSolution();
        continue;
      }
      break;
    }
    if (iterations_ >= options_.max_iterations) return Status::kIterationLimit;

    ApplyColumn(entering, alpha);
    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      if (alpha[i] <= options_.pivot_tolerance) continue;
      const double ratio = std::max(0.0, x_basic_[i]) / alpha[i];
      bool take = false;
      if (leave < 0 || ratio < best_ratio - kRatioTie) {
        take = true;
      } else if (ratio <= best_ratio + kRatioTie) {
        take = bland ? basis_[i] < basis_[leave] : alpha[i] > alpha[leave];
      }
      if (take) {
        leave = i;
        best_ratio = std::min(best_ratio, ratio);
      }
    }
    if (leave < 0) return Status::kUnbounded;
    const double step = std::max(0.0, x_basic_[leave]) / alpha[leave];

    x_basic_.noalias() -= step * alpha;
    x_basic_[leave] = step;

    pivot_row = binv_.row(leave);
    const double dual_step = entering_d / alpha[leave];
    for (int k = 0; k < m; ++k) duals_[k] += dual_step * pivot_row[k];

    binv_.row(leave) /= alpha[leave];
    pivot_row = binv_.row(leave);
    for (int i = 0; i < m; ++i) {
      if (i == leave || alpha[i] == 0.0) continue;
      binv_.row(i).noalias() -= alpha[i] * pivot_row;
    }

    basic_pos_[basis_[leave]] = -1;
    basis_[leave] = entering;
    basic_pos_[entering] = leave;

    if (step <= kDegenerateStep) {
      if (++degenerate_run > options_.degenerate_run_limit) bland = true;
    } else {
      degenerate_run = 0;
      bland = false;
    }
    ++iterations_;
    if (++pivots_since_refactor_ >= options_.refactor_interval) {
      if (!Refactor()) return Status::kSingularBasis;
      RecomputeSolution();
    }
  }

  objective_ = 0;
  for (int i = 0; i < m; ++i) objective_ += VarCost(basis_[i]) * x_basic_[i];
  return Status::kOptimal;
}

std::vector<double> RevisedSimplex::Primal() const {
  std::vector<double> x(columns_.size(), 0.0);
  const int m = num_rows();
  for (int i = 0; i < m; ++i) {
    if (basis_[i] >= m) x[basis_[i] - m] = std::max(0.0, x_basic_[i]);
  }
  return x;
}

double RevisedSimplex::DualObjective() const {
  double value = 0;
  for (int r = 0; r < num_rows(); ++r) value += rhs_[r] * duals_[r];
  return value;
}

}  // namespace cdnroute::lp
