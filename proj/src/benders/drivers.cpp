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

#include "bdx/benders/drivers.hpp"

#include <chrono>
#include <cmath>

namespace bdx::benders {

namespace {

lp::LpModel MasterBase(const BlockMilp& milp,
                       const std::vector<double>& t_lower) {
  lp::LpModel model;
  for (int j = 0; j < milp.n_x(); ++j) {
    model.AddVariable(milp.c[j], milp.l[j], milp.u[j]);
  }
  for (double lo : t_lower) model.AddVariable(1.0, lo, kInf);
  for (int r = 0; r < milp.m_d(); ++r) {
    lp::Row row;
    row.coefs.assign(model.num_vars(), 0.0);
    for (int j = 0; j < milp.n_x(); ++j) row.coefs[j] = milp.D(r, j);
    row.rhs = milp.h[r];
    model.AddRow(std::move(row));
  }
  return model;
}

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       since)
      .count();
}

}  // namespace

lp::Row CutToRow(const Cut& cut) {
  lp::Row row;
  row.coefs.resize(cut.alpha_x.size() + cut.alpha_t.size());
  for (int j = 0; j < cut.alpha_x.size(); ++j) row.coefs[j] = cut.alpha_x[j];
  for (int j = 0; j < cut.alpha_t.size(); ++j) {
    row.coefs[cut.alpha_x.size() + j] = cut.alpha_t[j];
  }
  row.relation = lp::Relation::kGreaterEqual;
  row.rhs = cut.alpha_0;
  return row;
}

Master::Master(const BlockMilp& milp, std::vector<double> t_lower)
    : n_x_(milp.n_x()),
      n_t_(static_cast<int>(t_lower.size())),
      t_lower_(std::move(t_lower)),
      integer_(milp.integer_indices),
      base_(MasterBase(milp, t_lower_)),
      simplex_(base_) {}

void Master::AddCut(const Cut& cut) {
  simplex_.AddRow(CutToRow(cut));
  cuts_.push_back(cut);
}

void Master::AddCuts(const std::vector<Cut>& cuts) {
  std::vector<lp::Row> rows;
  for (const Cut& cut : cuts) rows.push_back(CutToRow(cut));
  simplex_.AddRows(rows);
  cuts_.insert(cuts_.end(), cuts.begin(), cuts.end());
}

lp::LpOutcome Master::SolveLp() { return simplex_.Solve(); }

lp::LpModel Master::Model() const {
  lp::LpModel model = base_;
  for (const Cut& cut : cuts_) model.AddRow(CutToRow(cut));
  return model;
}

Eigen::VectorXd Master::X(std::span<const double> primal) const {
  return Eigen::Map<const Eigen::VectorXd>(primal.data(), n_x_);
}

Eigen::VectorXd Master::T(std::span<const double> primal) const {
  return Eigen::Map<const Eigen::VectorXd>(primal.data() + n_x_, n_t_);
}

Separation SeparateAll(TypicalOracle& oracle, const Eigen::VectorXd& x,
                       const Eigen::VectorXd& t) {
  Separation sep;
  for (int j = 0; j < oracle.num_blocks(); ++j) {
    OracleReply reply = oracle.Separate(j, x, t[j]);
    sep.total_value += reply.value;
    if (!reply.inside) sep.cuts.push_back(std::move(reply.cut));
  }
  return sep;
}

CutLoopResult RunLpCutLoop(Master& master, TypicalOracle& oracle,
                           int max_rounds) {
  CutLoopResult res;
  while (true) {
    res.outcome = master.SolveLp();
    if (res.outcome.status == lp::LpStatus::kInfeasible) {
      res.feasible = false;
      return res;
    }
    if (res.outcome.status == lp::LpStatus::kUnbounded) {
      throw NumericalFailure("unbounded Benders master");
    }
    if (res.rounds >= max_rounds) return res;
    const Separation sep = SeparateAll(oracle, master.X(res.outcome.primal),
                                       master.T(res.outcome.primal));
    if (sep.cuts.empty()) {
      res.converged = true;
      return res;
    }
    master.AddCuts(sep.cuts);
    ++res.rounds;
  }
}

std::string ToString(SeqStatus status) {
  switch (status) {
    case SeqStatus::kOptimal:
      return "Optimal";
    case SeqStatus::kInfeasible:
      return "Infeasible";
    case SeqStatus::kIterLimit:
      return "IterLimit";
    case SeqStatus::kTimeLimit:
      return "TimeLimit";
  }
  return "Unknown";
}

SeqResult BendersSeq(const BlockMilp& milp, TypicalOracle& oracle,
                     const SeqConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<SubBlock> blocks =
      MakeBlocks(milp, oracle.num_blocks() > 1);
  Master master(milp, TLowerBounds(milp, blocks));
  SeqResult res;
  while (true) {
    if (res.iterations >= config.max_iterations) {
      res.status = SeqStatus::kIterLimit;
      break;
    }
    if (Seconds(start) >= config.time_limit_s) {
      res.status = SeqStatus::kTimeLimit;
      break;
    }
    ++res.iterations;
    std::vector<double> primal;
    double obj = 0.0;
    if (config.integer_master) {
      const lp::LpModel model = master.Model();
      const bnb::BnbResult r = bnb::SolveBnb(
          model, master.IntegerColumns(), nullptr, nullptr, config.bnb);
      ++res.integer_master_solves;
      if (r.status == bnb::BnbStatus::kInfeasible) {
        res.status = SeqStatus::kInfeasible;
        break;
      }
      if (r.status != bnb::BnbStatus::kOptimal) {
        res.status = SeqStatus::kTimeLimit;
        break;
      }
      primal = r.incumbent;
      obj = r.objective;
    } else {
      const lp::LpOutcome out = master.SolveLp();
      ++res.lp_master_solves;
      if (out.status == lp::LpStatus::kInfeasible) {
        res.status = SeqStatus::kInfeasible;
        break;
      }
      if (out.status == lp::LpStatus::kUnbounded) {
        throw NumericalFailure("unbounded Benders master");
      }
      primal = out.primal;
      obj = out.objective;
    }
    res.x = master.X(primal);
    res.t = master.T(primal);
    res.lower_bound = std::max(res.lower_bound, obj);
    res.lower_bounds.push_back(res.lower_bound);
    const Separation sep = SeparateAll(oracle, res.x, res.t);
    if (config.integer_master && std::isfinite(sep.total_value)) {
      res.upper_bound =
          std::min(res.upper_bound, milp.c.dot(res.x) + sep.total_value);
    }
    if (sep.cuts.empty()) {
      res.status = SeqStatus::kOptimal;
      res.objective = obj;
      res.upper_bound = std::min(res.upper_bound, obj);
      break;
    }
    master.AddCuts(sep.cuts);
  }
  res.cuts = master.cuts();
  return res;
}

BendersBnbResult BendersBnb(const BlockMilp& milp, TypicalOracle& oracle,
                            MasterUserCallback user,
                            const BendersBnbConfig& config) {
  const std::vector<SubBlock> blocks =
      MakeBlocks(milp, oracle.num_blocks() > 1);
  Master master(milp, TLowerBounds(milp, blocks));
  BendersBnbResult res;
  auto tally = [&res](const Cut& cut) {
    switch (cut.kind) {
      case CutKind::kOptimality:
        ++res.optimality_cuts;
        break;
      case CutKind::kFeasibility:
        ++res.feasibility_cuts;
        break;
      case CutKind::kDisjunctive:
        ++res.disjunctive_cuts;
        break;
    }
    res.cuts.push_back(cut);
  };

  if (config.root_cut_loop) {
    const CutLoopResult loop =
        RunLpCutLoop(master, oracle, config.root_max_rounds);
    res.root_rounds = loop.rounds;
    if (loop.feasible) res.root_lp_bound = loop.outcome.objective;
    for (const Cut& cut : master.cuts()) tally(cut);
  }

  const int n_x = master.n_x();
  const int n_t = master.n_t();
  auto lazy = [&](const bnb::NodeContext&, std::span<const double> sol) {
    const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(sol.data(), n_x);
    const Eigen::VectorXd t =
        Eigen::Map<const Eigen::VectorXd>(sol.data() + n_x, n_t);
    bnb::CallbackVerdict verdict;
    for (const Cut& cut : SeparateAll(oracle, x, t).cuts) {
      verdict.cuts.push_back(CutToRow(cut));
      tally(cut);
    }
    verdict.accept = verdict.cuts.empty();
    return verdict;
  };
  bnb::UserCallback user_rows;
  if (user) {
    user_rows = [&](const bnb::NodeContext& ctx, std::span<const double> sol) {
      const Eigen::VectorXd x =
          Eigen::Map<const Eigen::VectorXd>(sol.data(), n_x);
      const Eigen::VectorXd t =
          Eigen::Map<const Eigen::VectorXd>(sol.data() + n_x, n_t);
      std::vector<lp::Row> rows;
      const std::vector<Cut> found = user(ctx, x, t, res.cuts);
      for (const Cut& cut : found) {
        rows.push_back(CutToRow(cut));
        tally(cut);
      }
      return rows;
    };
  }
  res.bnb = bnb::SolveBnb(master.Model(), master.IntegerColumns(), lazy,
                          user_rows, config.bnb);
  if (!res.bnb.incumbent.empty()) {
    res.x = master.X(res.bnb.incumbent);
    res.t = master.T(res.bnb.incumbent);
  }
  return res;
}

lp::LpModel BuildExtensive(const BlockMilp& milp) {
  lp::LpModel model;
  const int nx = milp.n_x();
  for (int j = 0; j < nx; ++j) model.AddVariable(milp.c[j], milp.l[j], milp.u[j]);
  for (int q = 0; q < milp.n_y(); ++q) model.AddVariable(milp.d[q], -kInf, kInf);
  std::vector<int> kept;
  for (int i = 0; i < milp.m(); ++i) {
    int single = -1;
    int count = 0;
    for (int q = 0; q < milp.n_y(); ++q) {
      if (milp.B(i, q) != 0.0) {
        single = q;
        ++count;
      }
    }
    if (count == 1 && milp.A.row(i).isZero(0.0)) {
      const int col = nx + single;
      const double bound = milp.b[i] / milp.B(i, single);
      double lo = model.lower[col];
      double up = model.upper[col];
      if (milp.B(i, single) > 0.0) {
        lo = std::max(lo, bound);
      } else {
        up = std::min(up, bound);
      }
      if (lo <= up) {
        model.lower[col] = lo;
        model.upper[col] = up;
        continue;
      }
    }
    kept.push_back(i);
  }
  for (int i : kept) {
    lp::Row row;
    row.coefs.resize(model.num_vars());
    for (int j = 0; j < nx; ++j) row.coefs[j] = milp.A(i, j);
    for (int q = 0; q < milp.n_y(); ++q) row.coefs[nx + q] = milp.B(i, q);
    row.rhs = milp.b[i];
    model.AddRow(std::move(row));
  }
  for (int r = 0; r < milp.m_d(); ++r) {
    lp::Row row;
    row.coefs.assign(model.num_vars(), 0.0);
    for (int j = 0; j < nx; ++j) row.coefs[j] = milp.D(r, j);
    row.rhs = milp.h[r];
    model.AddRow(std::move(row));
  }
  return model;
}

ExtResult SolveExtensive(const BlockMilp& milp, const bnb::BnbConfig& config) {
  ExtResult res;
  res.bnb = bnb::SolveBnb(BuildExtensive(milp), milp.integer_indices, nullptr,
                          nullptr, config);
  if (!res.bnb.incumbent.empty()) {
    res.x = Eigen::Map<const Eigen::VectorXd>(res.bnb.incumbent.data(),
                                              milp.n_x());
    res.y = Eigen::Map<const Eigen::VectorXd>(
        res.bnb.incumbent.data() + milp.n_x(), milp.n_y());
  }
  return res;
}

}  // namespace bdx::benders
