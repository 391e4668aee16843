// Copyright 2026 The benders-dx Authors
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

// Dense revised simplex with bounded variables.
//
// The model is always a minimization. Every row i is turned into
//
//     a_i^T x - s_i = 0,   s_i in [rhs_i, +inf)   for >= rows,
//                          s_i in (-inf, rhs_i]   for <= rows,
//                          s_i = rhs_i            for =  rows,
//
// so the working column set is [A | -I]. The initial basis consists of the
// row slacks. Phase 1 minimizes the sum of bound violations of the basic
// variables (composite simplex) and phase 2 the true cost. The inverse of the
// basis is kept explicitly and refreshed with an LU factorization every
// `refactor_every` pivots; basic values are recomputed from the nonbasic ones
// at every iteration so they never drift.
//
// Sign conventions of the returned multipliers:
//  * duals y satisfy y_i >= 0 on >= rows and y_i <= 0 on <= rows at an
//    optimum, and c^T x* = sum_i y_i rhs_i + (bound terms);
//  * a Farkas ray r has the same sign pattern and certifies that the
//    aggregated inequality (A^T r)^T x >= r^T rhs has no solution inside the
//    variable box.

#ifndef BDX_LP_SIMPLEX_HPP_
#define BDX_LP_SIMPLEX_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bdx/common/errors.hpp"

namespace bdx::lp {

enum class Relation { kGreaterEqual, kLessEqual, kEqual };

struct Row {
  std::vector<double> coefs;
  Relation relation = Relation::kGreaterEqual;
  double rhs = 0.0;
};

struct LpModel {
  std::vector<double> cost;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<Row> rows;

  int num_vars() const { return static_cast<int>(cost.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }

  // Returns the index of the new variable. Existing rows get a zero
  // coefficient for it.
  int AddVariable(double obj, double lo, double up);
  int AddRow(Row row);

  // Throws BadShape when a row has the wrong length or a variable has
  // lower > upper.
  void Validate() const;

  double Objective(std::span<const double> x) const;
  // Largest bound or row violation of x.
  double PrimalResidual(std::span<const double> x) const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

std::string ToString(LpStatus status);

enum class BasisStatus : std::uint8_t { kBasic, kAtLower, kAtUpper, kFreeZero };

// Column statuses, structural variables first and then one entry per row
// slack.
struct Basis {
  std::vector<BasisStatus> columns;
  bool empty() const { return columns.empty(); }
};

struct LpOutcome {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> primal;
  std::vector<double> duals;
  std::vector<double> reduced_costs;
  double objective = 0.0;
  // kInfeasible only: row multipliers, unit l1 norm.
  std::vector<double> farkas;
  // kUnbounded only: improving direction over structural variables, unit
  // infinity norm.
  std::vector<double> ray;
  Basis basis;
  int iterations = 0;
};

struct SimplexOptions {
  double feas_tol = 1e-9;
  double opt_tol = 1e-9;
  double pivot_tol = 1e-9;
  // Consecutive degenerate pivots before Bland's rule takes over.
  int bland_after = 200;
  int refactor_every = 64;
  int max_iterations = 200000;
};

class Simplex {
 public:
  explicit Simplex(const LpModel& model, SimplexOptions options = {});

  LpOutcome Solve();

  // New rows enter with their slacks basic, so the current basis stays valid.
  void AddRows(std::span<const Row> rows);
  void AddRow(const Row& row) { AddRows(std::span<const Row>(&row, 1)); }
  void SetBounds(int var, double lower, double upper);
  void SetCost(int var, double cost);
  // Installs a previously returned basis. Extra rows added since are given
  // basic slacks. Falls back to the slack basis when the basis is singular or
  // malformed.
  void SetBasis(const Basis& basis);
  Basis GetBasis() const;

  int num_vars() const { return n_; }
  int num_rows() const { return m_; }
  double lower(int var) const { return lo_[var]; }
  double upper(int var) const { return up_[var]; }
  const SimplexOptions& options() const { return options_; }
  const LpModel& model() const { return model_; }

 private:
  enum class Phase { kOne, kTwo };

  void InitSlackBasis();
  void PlaceNonbasic(int j);
  bool Refactor();
  // Swaps dependent basic columns for row slacks, then refactors.
  bool RepairBasis();
  void ComputePrimal();
  Eigen::VectorXd Column(int j) const;
  double ColumnDot(int j, const Eigen::VectorXd& y) const;
  double Infeasibility(int j) const;
  LpOutcome MakeOutcome(LpStatus status, const Eigen::VectorXd& y) const;

  LpModel model_;
  SimplexOptions options_;
  int n_ = 0;
  int m_ = 0;
  Eigen::MatrixXd a_;  // m x n
  std::vector<double> lo_, up_, cost_;  // n + m entries
  std::vector<BasisStatus> status_;
  std::vector<double> x_;
  std::vector<int> head_;  // basic variable per basis position
  Eigen::MatrixXd binv_;
  int pivots_since_refactor_ = 0;
  bool fresh_factor_ = false;
};

LpOutcome SolveLp(const LpModel& model, const SimplexOptions& options = {});

// Appends `new_rows` to `model` and resolves from the basis in `warm`.
LpOutcome AddRowsAndResolve(LpModel& model, std::span<const Row> new_rows,
                            const LpOutcome& warm,
                            const SimplexOptions& options = {});

// True when `farkas` (sign-restricted row multipliers) proves `model` has no
// point inside its variable box.
bool IsFarkasCertificate(const LpModel& model, std::span<const double> farkas,
                         double tol = 1e-9);

}  // namespace bdx::lp

#endif  // BDX_LP_SIMPLEX_HPP_
