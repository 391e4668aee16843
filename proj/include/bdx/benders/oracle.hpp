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

// Cuts in (x, t)-space and the typical oracles that separate a point from the
// epigraph of the value function.

#ifndef BDX_BENDERS_ORACLE_HPP_
#define BDX_BENDERS_ORACLE_HPP_

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bdx/benders/block_milp.hpp"
#include "bdx/lp/simplex.hpp"

namespace bdx::benders {

inline constexpr double kCutViolTol = 1e-6;

enum class CutKind { kOptimality, kFeasibility, kDisjunctive };
std::string ToString(CutKind kind);

// alpha_x^T x + alpha_t^T t >= alpha_0. `alpha_t` has one entry per block of
// the t-vector (a single entry when the value function is not split).
struct Cut {
  Eigen::VectorXd alpha_x;
  Eigen::VectorXd alpha_t;
  double alpha_0 = 0.0;
  CutKind kind = CutKind::kOptimality;
  int scenario = -1;

  // alpha_0 - alpha_x^T x - alpha_t^T t; positive when (x, t) is cut off.
  double Violation(const Eigen::VectorXd& x, const Eigen::VectorXd& t) const;
  bool IsZero() const;
  static Cut Zero(int n_x, int n_t);
};

struct OracleReply {
  bool inside = true;
  Cut cut;
  // f_j at the query point; +inf outside the domain.
  double value = kInf;
};

class TypicalOracle {
 public:
  virtual ~TypicalOracle() = default;
  virtual int num_blocks() const = 0;
  virtual int n_x() const = 0;
  // Separates (x, t) from the epigraph of f_block restricted to its domain.
  virtual OracleReply Separate(int block, const Eigen::VectorXd& x,
                               double t) = 0;
  long calls() const { return calls_; }

 protected:
  long calls_ = 0;
};

struct SubDualValue {
  // False when the dual is unbounded, i.e. x is outside dom f_j.
  bool feasible = true;
  double value = 0.0;
  // Optimal dual point, or the unbounded ray when !feasible.
  Eigen::VectorXd pi;
};

// max { (b_j - A_j x)^T pi : B_j^T pi = d_j, pi >= 0 } kept as one LP whose
// cost changes with x.
class SubDualSolver {
 public:
  explicit SubDualSolver(SubBlock block);
  SubDualValue Solve(const Eigen::VectorXd& x);
  const SubBlock& block() const { return block_; }

 private:
  SubBlock block_;
  lp::Simplex simplex_;
};

// Evaluates the sub-dual of `scenario`, or of the whole second stage when
// scenario < 0. Throws DualEmpty when the dual region is empty.
SubDualValue EvalSubDual(const BlockMilp& milp, const Eigen::VectorXd& x,
                         int scenario = -1);

// Optimality cut t_j >= pi^T (b_j - A_j x) or feasibility cut
// 0 >= ray^T (b_j - A_j x) built from a sub-dual solve.
Cut CutFromSubDual(const SubBlock& block, const SubDualValue& sub, int n_t);

class ClassicalOracle : public TypicalOracle {
 public:
  ClassicalOracle(const BlockMilp& milp, bool separable,
                  double viol_tol = kCutViolTol);
  int num_blocks() const override { return static_cast<int>(solvers_.size()); }
  int n_x() const override { return n_x_; }
  OracleReply Separate(int block, const Eigen::VectorXd& x, double t) override;

 private:
  int n_x_;
  double viol_tol_;
  std::vector<SubDualSolver> solvers_;
};

// Closed-form per-customer oracle for facility location: the assignment
// subproblem of customer j is a continuous knapsack solved greedily.
class UflpKnapsackOracle : public TypicalOracle {
 public:
  // costs(i, j): transport cost from facility i to customer j.
  explicit UflpKnapsackOracle(Eigen::MatrixXd costs,
                              double viol_tol = kCutViolTol);
  int num_blocks() const override { return static_cast<int>(costs_.cols()); }
  int n_x() const override { return static_cast<int>(costs_.rows()); }
  OracleReply Separate(int block, const Eigen::VectorXd& x, double t) override;

 private:
  Eigen::MatrixXd costs_;
  std::vector<std::vector<int>> order_;
  double viol_tol_;
};

}  // namespace bdx::benders

#endif  // BDX_BENDERS_ORACLE_HPP_
