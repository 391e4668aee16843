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

#include "bdx/dcglp/dcglp.hpp"

#include <algorithm>
#include <cmath>

namespace bdx::dcglp {

namespace {

bool IsInfNorm(double p) { return std::isinf(p) && p > 0; }

double PrimalNorm(const Eigen::VectorXd& s_x, const Eigen::VectorXd& s_t,
                  double p) {
  if (IsInfNorm(p)) {
    double m = 0.0;
    if (s_x.size() > 0) m = s_x.cwiseAbs().maxCoeff();
    if (s_t.size() > 0) m = std::max(m, s_t.cwiseAbs().maxCoeff());
    return m;
  }
  return s_x.cwiseAbs().sum() + s_t.cwiseAbs().sum();
}

lp::Row EmptyRow(int n, lp::Relation rel = lp::Relation::kGreaterEqual,
                 double rhs = 0.0) {
  lp::Row row;
  row.coefs.assign(n, 0.0);
  row.relation = rel;
  row.rhs = rhs;
  return row;
}

}  // namespace

Split Split::Simple(int n_x, int i) {
  Split s;
  s.phi = Eigen::VectorXi::Zero(n_x);
  s.phi[i] = 1;
  s.phi0 = 0;
  return s;
}

void Split::Check(const BlockMilp& milp) const {
  if (phi.size() != milp.n_x()) throw BadShape("split length differs from n_x");
  for (int j = 0; j < phi.size(); ++j) {
    if (phi[j] != 0 && !milp.IsInteger(j)) {
      throw BadShape("split uses continuous variable " + std::to_string(j));
    }
  }
}

void CheckNorm(double p) {
  if (p != 1.0 && !IsInfNorm(p)) {
    throw BadNorm("p must be 1 or inf, got " + std::to_string(p));
  }
}

double DualNorm(const Eigen::VectorXd& gamma_x, const Eigen::VectorXd& gamma_t,
                double p) {
  CheckNorm(p);
  // q = 1 for p = inf and q = inf for p = 1.
  return PrimalNorm(gamma_x, gamma_t, IsInfNorm(p) ? 1.0 : kInf);
}

DcglpModel::DcglpModel(const BlockMilp& milp, int n_t, const Split& split,
                       const Eigen::VectorXd& x_hat,
                       const Eigen::VectorXd& t_hat, double p,
                       const Fixings& fixings, lp::SimplexOptions options)
    : n_x_(milp.n_x()),
      n_t_(n_t),
      width_(milp.n_x() + n_t + 1),
      m_d_(milp.m_d()),
      options_(options) {
  CheckNorm(p);
  split.Check(milp);
  if (x_hat.size() != n_x_ || t_hat.size() != n_t_) {
    throw BadShape("separation point has the wrong size");
  }
  for (int j = 0; j < 2 * width_; ++j) {
    const bool is_zero = j == Kappa0() || j == Nu0();
    model_.AddVariable(0.0, is_zero ? 0.0 : -kInf, kInf);
  }
  for (int j = 0; j < n_x_ + n_t_; ++j) model_.AddVariable(0.0, -kInf, kInf);
  model_.AddVariable(1.0, 0.0, kInf);  // tau
  const int n_s = n_x_ + n_t_;
  int first_aux = -1;
  if (!IsInfNorm(p)) {
    first_aux = model_.num_vars();
    for (int j = 0; j < n_s; ++j) model_.AddVariable(0.0, 0.0, kInf);
  }
  const int n = model_.num_vars();

  lp::Row r0 = EmptyRow(n, lp::Relation::kEqual, 1.0);
  r0.coefs[Kappa0()] = 1.0;
  r0.coefs[Nu0()] = 1.0;
  row_gamma0_ = model_.AddRow(std::move(r0));
  row_gamma_x_ = model_.num_rows();
  for (int j = 0; j < n_x_; ++j) {
    lp::Row r = EmptyRow(n, lp::Relation::kEqual, x_hat[j]);
    r.coefs[KappaX(j)] = 1.0;
    r.coefs[NuX(j)] = 1.0;
    r.coefs[SX(j)] = -1.0;
    model_.AddRow(std::move(r));
  }
  row_gamma_t_ = model_.num_rows();
  for (int j = 0; j < n_t_; ++j) {
    lp::Row r = EmptyRow(n, lp::Relation::kEqual, t_hat[j]);
    r.coefs[KappaT(j)] = 1.0;
    r.coefs[NuT(j)] = 1.0;
    r.coefs[ST(j)] = -1.0;
    model_.AddRow(std::move(r));
  }

  lp::Row s1 = EmptyRow(n);
  lp::Row s2 = EmptyRow(n);
  for (int j = 0; j < n_x_; ++j) {
    s1.coefs[KappaX(j)] = split.phi[j];
    s2.coefs[NuX(j)] = -split.phi[j];
  }
  s1.coefs[Kappa0()] = -(split.phi0 + 1.0);
  s2.coefs[Nu0()] = split.phi0;
  row_sigma1_ = model_.AddRow(std::move(s1));
  row_sigma2_ = model_.AddRow(std::move(s2));

  for (int side = 0; side < 2; ++side) {
    const int off = side * width_;
    const int zero_col = off + n_x_ + n_t_;
    side_[side].theta = model_.num_rows();
    for (int r = 0; r < m_d_; ++r) {
      lp::Row row = EmptyRow(n);
      for (int j = 0; j < n_x_; ++j) row.coefs[off + j] = milp.D(r, j);
      row.coefs[zero_col] = -milp.h[r];
      model_.AddRow(std::move(row));
    }
    side_[side].delta = model_.num_rows();
    for (int j = 0; j < n_x_; ++j) {
      lp::Row row = EmptyRow(n);
      row.coefs[off + j] = 1.0;
      row.coefs[zero_col] = -milp.l[j];
      model_.AddRow(std::move(row));
    }
    side_[side].eta = model_.num_rows();
    for (int j = 0; j < n_x_; ++j) {
      lp::Row row = EmptyRow(n);
      row.coefs[off + j] = -1.0;
      row.coefs[zero_col] = milp.u[j];
      model_.AddRow(std::move(row));
    }
  }

  if (IsInfNorm(p)) {
    for (int j = 0; j < n_s; ++j) {
      for (double sign : {1.0, -1.0}) {
        lp::Row row = EmptyRow(n);
        row.coefs[Tau()] = 1.0;
        row.coefs[SX(0) + j] = -sign;
        model_.AddRow(std::move(row));
      }
    }
  } else {
    for (int j = 0; j < n_s; ++j) {
      for (double sign : {1.0, -1.0}) {
        lp::Row row = EmptyRow(n);
        row.coefs[first_aux + j] = 1.0;
        row.coefs[SX(0) + j] = -sign;
        model_.AddRow(std::move(row));
      }
    }
    lp::Row row = EmptyRow(n);
    row.coefs[Tau()] = 1.0;
    for (int j = 0; j < n_s; ++j) row.coefs[first_aux + j] = -1.0;
    model_.AddRow(std::move(row));
  }

  for (int side = 0; side < 2; ++side) {
    const int off = side * width_;
    const int zero_col = off + n_x_ + n_t_;
    for (int j : fixings.zero) {
      lp::Row row = EmptyRow(n);
      row.coefs[off + j] = -1.0;
      zeta_rows_[side].emplace_back(j, model_.AddRow(std::move(row)));
    }
    for (int j : fixings.one) {
      lp::Row row = EmptyRow(n);
      row.coefs[off + j] = 1.0;
      row.coefs[zero_col] = -1.0;
      xi_rows_[side].emplace_back(j, model_.AddRow(std::move(row)));
    }
  }
  base_rows_ = model_.num_rows();
}

std::array<lp::Row, 2> DcglpModel::RaiseCut(const Cut& cut) const {
  if (cut.alpha_x.size() != n_x_ || cut.alpha_t.size() != n_t_) {
    throw BadShape("cut does not match the disjunctive model");
  }
  std::array<lp::Row, 2> rows;
  for (int side = 0; side < 2; ++side) {
    const int off = side * width_;
    lp::Row row = EmptyRow(model_.num_vars());
    for (int j = 0; j < n_x_; ++j) row.coefs[off + j] = cut.alpha_x[j];
    for (int j = 0; j < n_t_; ++j) row.coefs[off + n_x_ + j] = cut.alpha_t[j];
    row.coefs[off + n_x_ + n_t_] = -cut.alpha_0;
    rows[side] = std::move(row);
  }
  return rows;
}

void DcglpModel::AddCut(const Cut& cut) {
  std::array<lp::Row, 2> rows = RaiseCut(cut);
  if (simplex_) simplex_->AddRows(rows);
  for (lp::Row& row : rows) model_.AddRow(std::move(row));
}

lp::LpOutcome DcglpModel::Solve() {
  if (!simplex_) simplex_.emplace(model_, options_);
  return simplex_->Solve();
}

DcglpPoint DcglpModel::Point(const lp::LpOutcome& out) const {
  const Eigen::Map<const Eigen::VectorXd> z(out.primal.data(),
                                            static_cast<int>(out.primal.size()));
  DcglpPoint pt;
  pt.kappa_x = z.segment(KappaX(0), n_x_);
  pt.kappa_t = z.segment(KappaT(0), n_t_);
  pt.kappa_0 = z[Kappa0()];
  pt.nu_x = z.segment(NuX(0), n_x_);
  pt.nu_t = z.segment(NuT(0), n_t_);
  pt.nu_0 = z[Nu0()];
  pt.s_x = z.segment(SX(0), n_x_);
  pt.s_t = z.segment(ST(0), n_t_);
  pt.tau = z[Tau()];
  return pt;
}

DcglpDuals DcglpModel::Duals(const lp::LpOutcome& out) const {
  const std::vector<double>& y = out.duals;
  auto segment = [&y](int first, int count) {
    Eigen::VectorXd v(count);
    for (int k = 0; k < count; ++k) v[k] = y[first + k];
    return v;
  };
  DcglpDuals d;
  // tau* = y_0 + y_x^T x^ + y_t^T t^ must equal the cut violation
  // gamma_0 - gamma_x^T x^ - gamma_t^T t^.
  d.gamma_0 = y[row_gamma0_];
  d.gamma_x = -segment(row_gamma_x_, n_x_);
  d.gamma_t = -segment(row_gamma_t_, n_t_);
  d.sigma1 = y[row_sigma1_];
  d.sigma2 = y[row_sigma2_];
  d.theta1 = segment(side_[0].theta, m_d_);
  d.theta2 = segment(side_[1].theta, m_d_);
  d.delta1 = segment(side_[0].delta, n_x_);
  d.delta2 = segment(side_[1].delta, n_x_);
  d.eta1 = segment(side_[0].eta, n_x_);
  d.eta2 = segment(side_[1].eta, n_x_);
  d.zeta1 = d.zeta2 = d.xi1 = d.xi2 = Eigen::VectorXd::Zero(n_x_);
  for (auto [j, row] : zeta_rows_[0]) d.zeta1[j] = y[row];
  for (auto [j, row] : zeta_rows_[1]) d.zeta2[j] = y[row];
  for (auto [j, row] : xi_rows_[0]) d.xi1[j] = y[row];
  for (auto [j, row] : xi_rows_[1]) d.xi2[j] = y[row];
  return d;
}

Cut DcglpModel::CutFromDuals(const DcglpDuals& duals) {
  Cut cut;
  cut.alpha_x = duals.gamma_x;
  cut.alpha_t = duals.gamma_t;
  // gamma_t is a sum of nonnegative multipliers; drop round-off below zero.
  for (int j = 0; j < cut.alpha_t.size(); ++j) {
    if (cut.alpha_t[j] < 0.0 && cut.alpha_t[j] > -1e-12) cut.alpha_t[j] = 0.0;
  }
  cut.alpha_0 = duals.gamma_0;
  cut.kind = benders::CutKind::kDisjunctive;
  return cut;
}

std::string ToString(DcglpStatus status) {
  switch (status) {
    case DcglpStatus::kConverged:
      return "Converged";
    case DcglpStatus::kGapReached:
      return "GapReached";
    case DcglpStatus::kStalled:
      return "Stalled";
    case DcglpStatus::kInsideHull:
      return "InsideHull";
    case DcglpStatus::kIterLimit:
      return "IterLimit";
  }
  return "?";
}

double UpperBoundCandidate(const DcglpPoint& point, const BlockQuery& kappa,
                           const BlockQuery& nu, const Eigen::VectorXd& t_hat,
                           double p) {
  Eigen::VectorXd s_t = -t_hat;
  auto add = [&s_t](const BlockQuery& q, const Eigen::VectorXd& omega_t,
                    double omega_0) {
    for (int j = 0; j < s_t.size(); ++j) {
      if (!q.queried || q.inside[j]) {
        s_t[j] += omega_t[j];
      } else if (std::isinf(q.value[j])) {
        return false;
      } else {
        s_t[j] += omega_0 * q.value[j];
      }
    }
    return true;
  };
  if (!add(kappa, point.kappa_t, point.kappa_0)) return kInf;
  if (!add(nu, point.nu_t, point.nu_0)) return kInf;
  return PrimalNorm(point.s_x, s_t, p);
}

DisjunctiveOracle::DisjunctiveOracle(const BlockMilp& milp,
                                     benders::TypicalOracle& typical,
                                     DcglpConfig config)
    : milp_(milp), typical_(typical), config_(config) {
  CheckNorm(config_.p);
  t_lower_ = benders::TLowerBounds(
      milp, benders::MakeBlocks(milp, typical.num_blocks() > 1));
}

DisjunctiveResult DisjunctiveOracle::Separate(const Split& split,
                                              const Eigen::VectorXd& x,
                                              const Eigen::VectorXd& t,
                                              std::span<const Cut> seeds,
                                              std::span<const Cut> previous,
                                              const Fixings& fixings) {
  CheckNorm(config_.p);
  const int n_x = milp_.n_x();
  const int n_t = typical_.num_blocks();
  DcglpModel model(milp_, n_t, split, x, t, config_.p, fixings, config_.lp);
  for (int j = 0; j < n_t; ++j) {
    Cut bound = Cut::Zero(n_x, n_t);
    bound.alpha_t[j] = 1.0;
    bound.alpha_0 = t_lower_[j];
    model.AddCut(bound);
  }
  for (const Cut& cut : seeds) model.AddCut(cut);
  for (const Cut& cut : previous) model.AddCut(cut);

  DisjunctiveResult res;
  double lb = -kInf;
  double ub = kInf;
  int stall = 0;
  while (true) {
    const lp::LpOutcome out = model.Solve();
    ++solves_;
    ++res.iterations;
    if (out.status == lp::LpStatus::kInfeasible) {
      throw Infeasible("disjunctive relaxation has no solution");
    }
    if (out.status != lp::LpStatus::kOptimal) {
      throw NumericalFailure("disjunctive relaxation is unbounded");
    }
    res.point = model.Point(out);
    res.duals = model.Duals(out);
    res.cut = DcglpModel::CutFromDuals(res.duals);
    res.tau = std::max(0.0, out.objective);
    res.tau_trace.push_back(res.tau);
    res.cut_trace.push_back(res.cut);
    const bool improved = res.tau > lb + 1e-9 * std::max(1.0, std::abs(lb)) ||
                          lb == -kInf;
    lb = std::max(lb, res.tau);

    std::array<BlockQuery, 2> queries;
    bool all_inside = true;
    for (int side = 0; side < 2; ++side) {
      const DcglpPoint& pt = res.point;
      const double omega_0 = side == 0 ? pt.kappa_0 : pt.nu_0;
      BlockQuery& q = queries[side];
      q.inside.assign(n_t, true);
      q.value.assign(n_t, kInf);
      if (omega_0 <= config_.omega_tol) continue;
      q.queried = true;
      const Eigen::VectorXd xq = (side == 0 ? pt.kappa_x : pt.nu_x) / omega_0;
      const Eigen::VectorXd tq = (side == 0 ? pt.kappa_t : pt.nu_t) / omega_0;
      for (int j = 0; j < n_t; ++j) {
        const benders::OracleReply reply = typical_.Separate(j, xq, tq[j]);
        q.value[j] = reply.value;
        if (reply.inside) continue;
        q.inside[j] = false;
        all_inside = false;
        model.AddCut(reply.cut);
        res.byproducts.push_back({reply.cut, reply.cut.Violation(xq, tq)});
      }
    }
    ub = std::min(ub, UpperBoundCandidate(res.point, queries[0], queries[1], t,
                                          config_.p));
    res.ub_trace.push_back(ub);
    if (all_inside) {
      res.status = DcglpStatus::kConverged;
      break;
    }
    if (std::isfinite(ub) && ub - lb <= config_.gap * ub) {
      res.status = DcglpStatus::kGapReached;
      break;
    }
    stall = improved ? 0 : stall + 1;
    if (stall >= config_.stall_limit && lb > config_.zero_tol) {
      res.status = DcglpStatus::kStalled;
      break;
    }
    if (res.iterations >= config_.max_iterations) {
      res.status = DcglpStatus::kIterLimit;
      break;
    }
  }
  if (res.tau <= config_.zero_tol) res.status = DcglpStatus::kInsideHull;
  return res;
}

DisjunctiveResult TheOracle(const BlockMilp& milp, const Split& split,
                            const Eigen::VectorXd& x, const Eigen::VectorXd& t,
                            benders::TypicalOracle& typical,
                            const DcglpConfig& config,
                            std::span<const Cut> seeds,
                            std::span<const Cut> previous) {
  DisjunctiveOracle oracle(milp, typical, config);
  return oracle.Separate(split, x, t, seeds, previous);
}

}  // namespace bdx::dcglp
