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

// Best-bound branch-and-bound over an LP relaxation with lazy-constraint and
// user-cut callbacks.
//
// Lazy callbacks see every LP solution that is integral on the integer
// columns and may reject it by returning violated rows; user callbacks run at
// every `user_cut_frequency`-th fractional node (the first fractional node
// included). All rows returned by callbacks are global.

#ifndef BDX_BNB_BRANCH_AND_BOUND_HPP_
#define BDX_BNB_BRANCH_AND_BOUND_HPP_

#include <chrono>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "bdx/lp/simplex.hpp"

namespace bdx::bnb {

struct BnbConfig {
  double int_tol = 1e-9;
  // Relative optimality gap used for pruning and termination.
  double opt_gap = 1e-6;
  double time_limit_s = kInf;
  long node_limit = std::numeric_limits<long>::max();
  bool up_first = true;
  int user_cut_frequency = 500;
  // Cut rounds per user-callback invocation.
  int user_cut_rounds = 1;
  // Re-check every callback row against all accepted incumbents.
  bool audit = false;
  lp::SimplexOptions lp;
};

enum class BnbStatus { kOptimal, kInfeasible, kTimeLimit, kNodeLimit };
std::string ToString(BnbStatus status);

enum class NodeStatus { kOpen, kFathomed, kBranched };

// Binaries fixed to 0 / 1 by branching on the path from the root.
struct IndexSets {
  std::vector<int> fixed_zero;
  std::vector<int> fixed_one;
};

struct BnbNode {
  int id = 0;
  int parent = -1;
  int depth = 0;
  int branch_var = -1;
  bool branch_up = false;
  double parent_bound = -kInf;
  NodeStatus status = NodeStatus::kOpen;
  // Bounds of the integer columns at this node, in `integer_vars` order.
  std::vector<double> lower;
  std::vector<double> upper;
  lp::Basis warm;
};

struct NodeContext {
  int node_id = 0;
  int depth = 0;
  long fractional_nodes = 0;
  IndexSets fixings;
};

struct CallbackVerdict {
  bool accept = true;
  std::vector<lp::Row> cuts;
};

using LazyCallback = std::function<CallbackVerdict(
    const NodeContext&, std::span<const double> solution)>;
using UserCallback = std::function<std::vector<lp::Row>(
    const NodeContext&, std::span<const double> solution)>;

struct TrajectoryPoint {
  long node_count = 0;
  double lower_bound = -kInf;
  double upper_bound = kInf;
  double time_s = 0.0;
};

struct BnbResult {
  BnbStatus status = BnbStatus::kInfeasible;
  std::vector<double> incumbent;
  double objective = kInf;
  double lower_bound = -kInf;
  double root_bound = -kInf;
  long node_count = 0;
  long lp_solves = 0;
  long lazy_cuts = 0;
  long user_cuts = 0;
  long audit_violations = 0;
  double time_s = 0.0;
  std::vector<TrajectoryPoint> trajectory;
};

class BranchAndBound {
 public:
  BranchAndBound(const lp::LpModel& relaxation, std::vector<int> integer_vars,
                 BnbConfig config = {});

  void set_lazy_callback(LazyCallback cb) { lazy_ = std::move(cb); }
  void set_user_callback(UserCallback cb) { user_ = std::move(cb); }

  BnbResult Solve();

  // Throws UnknownNode for ids never created.
  IndexSets NodeFixings(int node_id) const;
  const BnbNode& node(int node_id) const;
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  // The relaxation including every row added by callbacks.
  const lp::LpModel& model() const { return simplex_.model(); }

 private:
  void AddCuts(std::span<const lp::Row> cuts);
  void Record(BnbResult& result, double lb, double ub);
  double Elapsed() const;

  lp::Simplex simplex_;
  std::vector<int> integer_vars_;
  BnbConfig config_;
  LazyCallback lazy_;
  UserCallback user_;
  std::vector<BnbNode> nodes_;
  std::vector<std::vector<double>> incumbents_;
  long audit_violations_ = 0;
  std::chrono::steady_clock::time_point start_;
};

BnbResult SolveBnb(const lp::LpModel& relaxation,
                   std::span<const int> integer_vars, LazyCallback lazy,
                   UserCallback user, const BnbConfig& config = {});

}  // namespace bdx::bnb

#endif  // BDX_BNB_BRANCH_AND_BOUND_HPP_
