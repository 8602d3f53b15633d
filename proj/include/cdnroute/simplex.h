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

// Dense primal revised simplex for
//
//   min c'x  s.t.  A x <= b (some rows),  A x = b (other rows),  x >= 0.
//
// The basis inverse is kept explicitly and updated by elementary row
// operations; it is rebuilt from scratch periodically and before results are
// reported. Columns can be appended between solves, in which case the next
// Solve() resumes from the previous optimal basis.
//
// Pricing is Dantzig's rule. After a run of degenerate pivots the solver
// switches to Bland's rule until the objective moves again, which rules out
// cycling.

#ifndef CDNROUTE_SIMPLEX_H_
#define CDNROUTE_SIMPLEX_H_

#include <Eigen/Dense>
#include <span>
#include <vector>

namespace cdnroute::lp {

enum class RowSense { kLessEqual, kEqual };

struct Entry {
  int row = 0;
  double value = 0;
};

struct Column {
  double cost = 0;
  std::vector<Entry> entries;
};

enum class Status { kOptimal, kIterationLimit, kInfeasibleStart, kUnbounded,
                    kSingularBasis };

const char* StatusName(Status status);

struct Options {
  double optimality_tolerance = 1e-9;
  double feasibility_tolerance = 1e-9;
  double pivot_tolerance = 1e-9;
  int refactor_interval = 200;
  int max_iterations = 1'000'000;
  // Consecutive degenerate pivots before switching to Bland's rule.
  int degenerate_run_limit = 50;
};

class RevisedSimplex {
 public:
  RevisedSimplex(std::vector<RowSense> senses, std::vector<double> rhs,
                 Options options = {});

  int num_rows() const { return static_cast<int>(rhs_.size()); }
  int num_columns() const { return static_cast<int>(columns_.size()); }
  const Column& column(int j) const { return columns_[j]; }
  RowSense sense(int row) const { return senses_[row]; }
  double rhs(int row) const { return rhs_[row]; }

  int AddColumn(Column column);

  // Every equality row needs a starting basic column, which must be set
  // before the first Solve(). Inequality rows start on their slack.
  void SetStartingColumn(int row, int column);

  Status Solve();

  // Valid after a kOptimal solve.
  double objective() const { return objective_; }
  // Structural primal values.
  std::vector<double> Primal() const;
  // Row duals pi with reduced cost c_j - pi' a_j. Nonpositive on <= rows.
  std::span<const double> duals() const { return duals_; }
  double ReducedCost(int column) const;
  // b' pi.
  double DualObjective() const;
  int iterations() const { return iterations_; }

 private:
  // Variables are indexed slack-first: [0, m) are row slacks, m + j is
  // structural column j.
  double VarCost(int var) const;
  void ApplyColumn(int var, Eigen::VectorXd& alpha) const;
  bool Refactor();
  void RecomputeSolution();
  int ChooseEntering(bool bland, double& reduced_cost) const;

  std::vector<RowSense> senses_;
  std::vector<double> rhs_;
  std::vector<Column> columns_;
  Options options_;

  bool started_ = false;
  std::vector<int> basis_;         // row position -> var
  std::vector<int> basic_pos_;     // var -> row position, -1 if nonbasic
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> binv_;
  Eigen::VectorXd x_basic_;
  std::vector<double> duals_;
  double objective_ = 0;
  int iterations_ = 0;
  int pivots_since_refactor_ = 0;
};

}  // namespace cdnroute::lp

#endif  // CDNROUTE_SIMPLEX_H_
