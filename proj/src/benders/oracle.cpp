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

#include "bdx/benders/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace bdx::benders {

namespace {

lp::LpModel BuildSubDual(const SubBlock& blk) {
  lp::LpModel model;
  const int rows = static_cast<int>(blk.B.rows());
  for (int i = 0; i < rows; ++i) model.AddVariable(0.0, 0.0, kInf);
  for (int q = 0; q < blk.B.cols(); ++q) {
    lp::Row row;
    row.coefs.resize(rows);
    for (int i = 0; i < rows; ++i) row.coefs[i] = blk.B(i, q);
    row.relation = lp::Relation::kEqual;
    row.rhs = blk.d[q];
    model.AddRow(std::move(row));
  }
  return model;
}

}  // namespace

std::string ToString(CutKind kind) {
  switch (kind) {
    case CutKind::kOptimality:
      return "optimality";
    case CutKind::kFeasibility:
      return "feasibility";
    case CutKind::kDisjunctive:
      return "disjunctive";
  }
  return "unknown";
}

double Cut::Violation(const Eigen::VectorXd& x, const Eigen::VectorXd& t) const {
  return alpha_0 - alpha_x.dot(x) - alpha_t.dot(t);
}

bool Cut::IsZero() const {
  return alpha_0 == 0.0 && alpha_x.isZero(0.0) && alpha_t.isZero(0.0);
}

Cut Cut::Zero(int n_x, int n_t) {
  Cut cut;
  cut.alpha_x = Eigen::VectorXd::Zero(n_x);
  cut.alpha_t = Eigen::VectorXd::Zero(n_t);
  return cut;
}

SubDualSolver::SubDualSolver(SubBlock block)
    : block_(std::move(block)), simplex_(BuildSubDual(block_)) {}

SubDualValue SubDualSolver::Solve(const Eigen::VectorXd& x) {
  const Eigen::VectorXd slack = block_.b - block_.A * x;
  for (int i = 0; i < slack.size(); ++i) simplex_.SetCost(i, -slack[i]);
  const lp::LpOutcome out = simplex_.Solve();
  SubDualValue res;
  switch (out.status) {
    case lp::LpStatus::kOptimal:
      res.value = -out.objective;
      res.pi = Eigen::Map<const Eigen::VectorXd>(out.primal.data(),
                                                 slack.size());
      break;
    case lp::LpStatus::kUnbounded:
      res.feasible = false;
      res.value = kInf;
      res.pi = Eigen::Map<const Eigen::VectorXd>(out.ray.data(), slack.size());
      break;
    case lp::LpStatus::kInfeasible:
      throw DualEmpty("block " + std::to_string(block_.id));
  }
  return res;
}

SubDualValue EvalSubDual(const BlockMilp& milp, const Eigen::VectorXd& x,
                         int scenario) {
  std::vector<SubBlock> blocks = MakeBlocks(milp, scenario >= 0);
  const int k = std::max(scenario, 0);
  if (k >= static_cast<int>(blocks.size())) {
    throw InstanceShape("unknown scenario " + std::to_string(scenario));
  }
  SubDualSolver solver(std::move(blocks[k]));
  return solver.Solve(x);
}

Cut CutFromSubDual(const SubBlock& block, const SubDualValue& sub, int n_t) {
  Cut cut = Cut::Zero(static_cast<int>(block.A.cols()), n_t);
  cut.alpha_x = block.A.transpose() * sub.pi;
  cut.alpha_0 = sub.pi.dot(block.b);
  cut.scenario = block.id;
  if (sub.feasible) {
    cut.kind = CutKind::kOptimality;
    cut.alpha_t[n_t == 1 ? 0 : block.id] = 1.0;
  } else {
    cut.kind = CutKind::kFeasibility;
  }
  return cut;
}

ClassicalOracle::ClassicalOracle(const BlockMilp& milp, bool separable,
                                 double viol_tol)
    : n_x_(milp.n_x()), viol_tol_(viol_tol) {
  for (SubBlock& blk : MakeBlocks(milp, separable)) {
    solvers_.emplace_back(std::move(blk));
  }
}

OracleReply ClassicalOracle::Separate(int block, const Eigen::VectorXd& x,
                                      double t) {
  ++calls_;
  const int n_t = num_blocks();
  SubDualSolver& solver = solvers_.at(block);
  const SubDualValue sub = solver.Solve(x);
  OracleReply reply;
  reply.value = sub.value;
  reply.cut = Cut::Zero(n_x_, n_t);
  if (!sub.feasible) {
    Cut cut = CutFromSubDual(solver.block(), sub, n_t);
    const double viol = cut.alpha_0 - cut.alpha_x.dot(x);
    if (viol > viol_tol_) {
      reply.inside = false;
      reply.cut = std::move(cut);
    }
    return reply;
  }
  if (t < sub.value - viol_tol_) {
    reply.inside = false;
    reply.cut = CutFromSubDual(solver.block(), sub, n_t);
  }
  return reply;
}

UflpKnapsackOracle::UflpKnapsackOracle(Eigen::MatrixXd costs, double viol_tol)
    : costs_(std::move(costs)), viol_tol_(viol_tol) {
  const int fac = static_cast<int>(costs_.rows());
  if (fac < 1 || costs_.cols() < 1) throw InstanceShape("empty cost matrix");
  for (int j = 0; j < costs_.cols(); ++j) {
    std::vector<int> order(fac);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return costs_(a, j) < costs_(b, j);
    });
    order_.push_back(std::move(order));
  }
}

OracleReply UflpKnapsackOracle::Separate(int block, const Eigen::VectorXd& x,
                                         double t) {
  ++calls_;
  if (x.size() != costs_.rows()) throw InstanceShape("x length");
  const int fac = static_cast<int>(costs_.rows());
  const int n_t = num_blocks();
  OracleReply reply;
  reply.cut = Cut::Zero(fac, n_t);
  const std::vector<int>& order = order_.at(block);

  // Greedy fill up to unit demand; k is the critical facility.
  double filled = 0.0;
  double value = 0.0;
  int critical = -1;
  for (int i : order) {
    const double take = std::min(std::max(x[i], 0.0), 1.0 - filled);
    value += take * costs_(i, block);
    filled += take;
    if (filled >= 1.0 - 1e-12) {
      critical = i;
      break;
    }
  }
  if (critical < 0) {
    reply.value = kInf;
    Cut cut = Cut::Zero(fac, n_t);
    cut.alpha_x.setOnes();
    cut.alpha_0 = 1.0;
    cut.kind = CutKind::kFeasibility;
    cut.scenario = block;
    if (cut.alpha_0 - x.sum() > viol_tol_) {
      reply.inside = false;
      reply.cut = std::move(cut);
    }
    return reply;
  }
  const double ck = costs_(critical, block);
  Cut cut = Cut::Zero(fac, n_t);
  for (int i = 0; i < fac; ++i) {
    cut.alpha_x[i] = std::max(0.0, ck - costs_(i, block));
  }
  cut.alpha_t[block] = 1.0;
  cut.alpha_0 = ck;
  cut.kind = CutKind::kOptimality;
  cut.scenario = block;
  reply.value = value;
  if (t < value - viol_tol_) {
    reply.inside = false;
    reply.cut = std::move(cut);
  }
  return reply;
}

}  // namespace bdx::benders
