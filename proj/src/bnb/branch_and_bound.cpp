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

#include "bdx/bnb/branch_and_bound.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <utility>

namespace bdx::bnb {

namespace {

double RowActivity(const lp::Row& row, std::span<const double> x) {
  double act = 0.0;
  for (size_t j = 0; j < row.coefs.size(); ++j) act += row.coefs[j] * x[j];
  return act;
}

bool RowViolated(const lp::Row& row, std::span<const double> x, double tol) {
  const double act = RowActivity(row, x);
  const double scale = tol * (1.0 + std::abs(row.rhs));
  switch (row.relation) {
    case lp::Relation::kGreaterEqual:
      return act < row.rhs - scale;
    case lp::Relation::kLessEqual:
      return act > row.rhs + scale;
    case lp::Relation::kEqual:
      return std::abs(act - row.rhs) > scale;
  }
  return false;
}

// Pruning threshold: a node with bound >= this cannot improve `ub` by more
// than the relative gap.
double PruneLevel(double ub, double gap) {
  if (ub == kInf) return kInf;
  return ub - std::max(1e-9, gap * std::abs(ub));
}

struct OpenEntry {
  double bound;
  int id;
  bool operator>(const OpenEntry& o) const {
    if (bound != o.bound) return bound > o.bound;
    return id > o.id;
  }
};

}  // namespace

std::string ToString(BnbStatus status) {
  switch (status) {
    case BnbStatus::kOptimal:
      return "Optimal";
    case BnbStatus::kInfeasible:
      return "Infeasible";
    case BnbStatus::kTimeLimit:
      return "TimeLimit";
    case BnbStatus::kNodeLimit:
      return "NodeLimit";
  }
  return "Unknown";
}

BranchAndBound::BranchAndBound(const lp::LpModel& relaxation,
                               std::vector<int> integer_vars,
                               BnbConfig config)
    : simplex_(relaxation, config.lp),
      integer_vars_(std::move(integer_vars)),
      config_(config) {
  for (int j : integer_vars_) {
    if (j < 0 || j >= relaxation.num_vars()) {
      throw BadShape("integer index out of range");
    }
    if (!std::isfinite(relaxation.lower[j]) ||
        !std::isfinite(relaxation.upper[j])) {
      throw BadShape("integer variable without finite bounds");
    }
  }
}

double BranchAndBound::Elapsed() const {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start_)
      .count();
}

const BnbNode& BranchAndBound::node(int node_id) const {
  if (node_id < 0 || node_id >= num_nodes()) {
    throw UnknownNode("node " + std::to_string(node_id));
  }
  return nodes_[node_id];
}

IndexSets BranchAndBound::NodeFixings(int node_id) const {
  const BnbNode& leaf = node(node_id);
  IndexSets sets;
  for (size_t k = 0; k < integer_vars_.size(); ++k) {
    const int j = integer_vars_[k];
    const double root_lo = nodes_[0].lower[k];
    const double root_up = nodes_[0].upper[k];
    if (root_lo != 0.0 || root_up != 1.0) continue;
    if (leaf.upper[k] == 0.0) sets.fixed_zero.push_back(j);
    if (leaf.lower[k] == 1.0) sets.fixed_one.push_back(j);
  }
  return sets;
}

void BranchAndBound::AddCuts(std::span<const lp::Row> cuts) {
  if (cuts.empty()) return;
  if (config_.audit) {
    for (const lp::Row& row : cuts) {
      for (const std::vector<double>& inc : incumbents_) {
        if (RowViolated(row, inc, 1e-6)) ++audit_violations_;
      }
    }
  }
  simplex_.AddRows(cuts);
}

void BranchAndBound::Record(BnbResult& result, double lb, double ub) {
  TrajectoryPoint pt{result.node_count, lb, ub, Elapsed()};
  if (!result.trajectory.empty()) {
    TrajectoryPoint& last = result.trajectory.back();
    pt.lower_bound = std::max(pt.lower_bound, last.lower_bound);
    if (last.node_count == pt.node_count) {
      last = pt;
      return;
    }
    if (last.lower_bound == pt.lower_bound &&
        last.upper_bound == pt.upper_bound) {
      return;
    }
  }
  result.trajectory.push_back(pt);
}

BnbResult BranchAndBound::Solve() {
  start_ = std::chrono::steady_clock::now();
  nodes_.clear();
  incumbents_.clear();
  audit_violations_ = 0;

  const int ni = static_cast<int>(integer_vars_.size());
  BnbNode root;
  root.id = 0;
  for (int j : integer_vars_) {
    root.lower.push_back(simplex_.lower(j));
    root.upper.push_back(simplex_.upper(j));
  }
  nodes_.push_back(root);

  std::priority_queue<OpenEntry, std::vector<OpenEntry>, std::greater<>> open;
  open.push({-kInf, 0});

  BnbResult result;
  double ub = kInf;
  long fractional_nodes = 0;
  int last_solved = -1;
  bool stopped = false;

  while (!open.empty()) {
    if (result.node_count > 0 && Elapsed() >= config_.time_limit_s) {
      result.status = BnbStatus::kTimeLimit;
      stopped = true;
      break;
    }
    if (result.node_count >= config_.node_limit) {
      result.status = BnbStatus::kNodeLimit;
      stopped = true;
      break;
    }
    const OpenEntry top = open.top();
    open.pop();
    BnbNode& cur = nodes_[top.id];
    if (top.bound >= PruneLevel(ub, config_.opt_gap)) {
      cur.status = NodeStatus::kFathomed;
      continue;
    }

    for (int k = 0; k < ni; ++k) {
      simplex_.SetBounds(integer_vars_[k], cur.lower[k], cur.upper[k]);
    }
    if (cur.parent != last_solved && !cur.warm.empty()) {
      simplex_.SetBasis(cur.warm);
    }
    ++result.node_count;
    last_solved = cur.id;

    NodeContext ctx;
    ctx.node_id = cur.id;
    ctx.depth = cur.depth;
    bool counted_fractional = false;
    int user_rounds = 0;
    while (true) {
      const lp::LpOutcome out = simplex_.Solve();
      ++result.lp_solves;
      if (out.status == lp::LpStatus::kInfeasible) {
        nodes_[top.id].status = NodeStatus::kFathomed;
        break;
      }
      if (out.status == lp::LpStatus::kUnbounded) {
        throw NumericalFailure("unbounded node relaxation");
      }
      if (cur.id == 0) result.root_bound = out.objective;
      if (out.objective >= PruneLevel(ub, config_.opt_gap)) {
        nodes_[top.id].status = NodeStatus::kFathomed;
        break;
      }
      int branch_k = -1;
      double best_frac = 0.0;
      for (int k = 0; k < ni; ++k) {
        const double v = out.primal[integer_vars_[k]];
        const double frac = std::abs(v - std::round(v));
        if (frac > config_.int_tol && frac > best_frac + 1e-12) {
          best_frac = frac;
          branch_k = k;
        }
      }
      if (branch_k < 0) {
        std::vector<double> x = out.primal;
        for (int j : integer_vars_) x[j] = std::round(x[j]);
        if (lazy_) {
          ctx.fixings = NodeFixings(cur.id);
          ctx.fractional_nodes = fractional_nodes;
          CallbackVerdict verdict = lazy_(ctx, x);
          if (!verdict.accept) {
            if (verdict.cuts.empty()) {
              throw Error("lazy callback rejected without cuts");
            }
            result.lazy_cuts += static_cast<long>(verdict.cuts.size());
            AddCuts(verdict.cuts);
            continue;
          }
        }
        const double obj = simplex_.model().Objective(x);
        if (obj < ub) {
          ub = obj;
          result.incumbent = x;
          result.objective = obj;
        }
        if (config_.audit) incumbents_.push_back(std::move(x));
        nodes_[top.id].status = NodeStatus::kFathomed;
        break;
      }
      if (!counted_fractional) {
        counted_fractional = true;
        ctx.fractional_nodes = fractional_nodes;
        const bool due = user_ && config_.user_cut_frequency > 0 &&
                         fractional_nodes % config_.user_cut_frequency == 0;
        ++fractional_nodes;
        if (due) user_rounds = config_.user_cut_rounds;
      }
      if (user_rounds > 0) {
        --user_rounds;
        ctx.fixings = NodeFixings(cur.id);
        std::vector<lp::Row> cuts = user_(ctx, out.primal);
        if (!cuts.empty()) {
          result.user_cuts += static_cast<long>(cuts.size());
          AddCuts(cuts);
          continue;
        }
      }

      // Branch on the most fractional integer column.
      nodes_[top.id].status = NodeStatus::kBranched;
      const lp::Basis basis = simplex_.GetBasis();
      const double v = out.primal[integer_vars_[branch_k]];
      for (int side = 0; side < 2; ++side) {
        const bool up = (side == 0) == config_.up_first;
        BnbNode child;
        child.id = num_nodes();
        child.parent = top.id;
        child.depth = nodes_[top.id].depth + 1;
        child.branch_var = integer_vars_[branch_k];
        child.branch_up = up;
        child.parent_bound = out.objective;
        child.lower = nodes_[top.id].lower;
        child.upper = nodes_[top.id].upper;
        if (up) {
          child.lower[branch_k] = std::ceil(v);
        } else {
          child.upper[branch_k] = std::floor(v);
        }
        child.warm = basis;
        open.push({out.objective, child.id});
        nodes_.push_back(std::move(child));
      }
      break;
    }
    // `cur` may dangle after nodes_ grew.
    nodes_[top.id].warm = lp::Basis{};

    const double open_lb = open.empty() ? ub : std::min(open.top().bound, ub);
    Record(result, open_lb, ub);
  }

  if (!stopped) {
    result.status =
        ub < kInf ? BnbStatus::kOptimal : BnbStatus::kInfeasible;
    result.lower_bound = ub;
  } else {
    double lb = ub;
    if (!open.empty()) lb = std::min(lb, open.top().bound);
    if (result.node_count == 0) lb = -kInf;
    if (!result.trajectory.empty()) {
      lb = std::max(lb, result.trajectory.back().lower_bound);
    }
    if (result.node_count > 0 && lb == -kInf) lb = result.root_bound;
    result.lower_bound = lb;
  }
  // Root-only time limits still report the root relaxation bound.
  if (result.lower_bound == -kInf) result.lower_bound = result.root_bound;
  Record(result, result.lower_bound, ub);
  result.audit_violations = audit_violations_;
  result.time_s = Elapsed();
  return result;
}

BnbResult SolveBnb(const lp::LpModel& relaxation,
                   std::span<const int> integer_vars, LazyCallback lazy,
                   UserCallback user, const BnbConfig& config) {
  BranchAndBound bnb(relaxation,
                     std::vector<int>(integer_vars.begin(), integer_vars.end()),
                     config);
  bnb.set_lazy_callback(std::move(lazy));
  bnb.set_user_callback(std::move(user));
  return bnb.Solve();
}

}  // namespace bdx::bnb
