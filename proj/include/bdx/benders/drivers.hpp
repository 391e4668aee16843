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

// Benders master problem and the solution drivers built on it: the
// sequential cut loop, branch-and-Benders-cut and the extensive form.

#ifndef BDX_BENDERS_DRIVERS_HPP_
#define BDX_BENDERS_DRIVERS_HPP_

#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bdx/benders/block_milp.hpp"
#include "bdx/benders/oracle.hpp"
#include "bdx/bnb/branch_and_bound.hpp"
#include "bdx/lp/simplex.hpp"

namespace bdx::benders {

// Converts cuts over (x, t) to master rows. Columns are x followed by t.
lp::Row CutToRow(const Cut& cut);

// Master over (x, t): min c^T x + sum_j t_j s.t. l <= x <= u, D x >= h,
// t_j >= t_lower[j] and every cut added so far. Keeps a warm LP solver.
class Master {
 public:
  Master(const BlockMilp& milp, std::vector<double> t_lower);

  int n_x() const { return n_x_; }
  int n_t() const { return n_t_; }
  void AddCut(const Cut& cut);
  void AddCuts(const std::vector<Cut>& cuts);
  lp::LpOutcome SolveLp();
  const std::vector<Cut>& cuts() const { return cuts_; }
  const std::vector<double>& t_lower() const { return t_lower_; }
  // Master model including all cuts; for branch-and-bound.
  lp::LpModel Model() const;
  std::vector<int> IntegerColumns() const { return integer_; }

  Eigen::VectorXd X(std::span<const double> primal) const;
  Eigen::VectorXd T(std::span<const double> primal) const;

 private:
  int n_x_;
  int n_t_;
  std::vector<double> t_lower_;
  std::vector<int> integer_;
  lp::LpModel base_;
  lp::Simplex simplex_;
  std::vector<Cut> cuts_;
};

// Queries every block at (x, t) and returns the violated cuts in block order
// together with the sum of block values (+inf outside the domain).
struct Separation {
  std::vector<Cut> cuts;
  double total_value = 0.0;
};
Separation SeparateAll(TypicalOracle& oracle, const Eigen::VectorXd& x,
                       const Eigen::VectorXd& t);

struct CutLoopResult {
  bool feasible = true;
  bool converged = false;
  int rounds = 0;
  lp::LpOutcome outcome;
};

// Solves the LP master and adds typical-oracle cuts until every block is
// inside or `max_rounds` is reached.
CutLoopResult RunLpCutLoop(Master& master, TypicalOracle& oracle,
                           int max_rounds);

enum class SeqStatus { kOptimal, kInfeasible, kIterLimit, kTimeLimit };
std::string ToString(SeqStatus status);

struct SeqConfig {
  bool integer_master = true;
  int max_iterations = 100000;
  double time_limit_s = kInf;
  bnb::BnbConfig bnb;
};

struct SeqResult {
  SeqStatus status = SeqStatus::kIterLimit;
  Eigen::VectorXd x;
  Eigen::VectorXd t;
  double objective = kInf;
  double lower_bound = -kInf;
  double upper_bound = kInf;
  int iterations = 0;
  long integer_master_solves = 0;
  long lp_master_solves = 0;
  std::vector<double> lower_bounds;
  std::vector<Cut> cuts;
};

// Conventional Benders loop: solve the master (as a MILP or an LP), query the
// oracle at its optimum and add the violated cuts.
SeqResult BendersSeq(const BlockMilp& milp, TypicalOracle& oracle,
                     const SeqConfig& config = {});

// Called at fractional nodes with the master point and every cut added to
// the master so far; returns global cuts.
using MasterUserCallback = std::function<std::vector<Cut>(
    const bnb::NodeContext&, const Eigen::VectorXd& x,
    const Eigen::VectorXd& t, std::span<const Cut> master_cuts)>;

struct BendersBnbConfig {
  bnb::BnbConfig bnb;
  // Cut loop on the LP relaxation before branching.
  bool root_cut_loop = true;
  int root_max_rounds = 10000;
};

struct BendersBnbResult {
  bnb::BnbResult bnb;
  Eigen::VectorXd x;
  Eigen::VectorXd t;
  double root_lp_bound = -kInf;
  int root_rounds = 0;
  long optimality_cuts = 0;
  long feasibility_cuts = 0;
  long disjunctive_cuts = 0;
  std::vector<Cut> cuts;
};

// Branch-and-Benders-cut: lazy callback wraps `oracle`; `user`, when set, is
// invoked at the fractional nodes selected by config.bnb.user_cut_frequency.
BendersBnbResult BendersBnb(const BlockMilp& milp, TypicalOracle& oracle,
                            MasterUserCallback user,
                            const BendersBnbConfig& config = {});

// Extensive form over (x, y). Rows with a single y entry and no x entry
// become bounds on that y.
lp::LpModel BuildExtensive(const BlockMilp& milp);

struct ExtResult {
  bnb::BnbResult bnb;
  Eigen::VectorXd x;
  Eigen::VectorXd y;
};
ExtResult SolveExtensive(const BlockMilp& milp, const bnb::BnbConfig& config = {});

}  // namespace bdx::benders

#endif  // BDX_BENDERS_DRIVERS_HPP_
