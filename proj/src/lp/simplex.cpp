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

#include "bdx/lp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bdx::lp {

namespace {

// Shorter steps count towards Bland's rule; longer ones end it.
constexpr double kProgressStep = 1e-7;

bool IsFinite(double v) { return std::isfinite(v); }

void SlackBounds(const Row& row, double* lo, double* up) {
  switch (row.relation) {
    case Relation::kGreaterEqual:
      *lo = row.rhs;
      *up = kInf;
      break;
    case Relation::kLessEqual:
      *lo = -kInf;
      *up = row.rhs;
      break;
    case Relation::kEqual:
      *lo = row.rhs;
      *up = row.rhs;
      break;
  }
}

}  // namespace

std::string ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "Optimal";
    case LpStatus::kInfeasible:
      return "Infeasible";
    case LpStatus::kUnbounded:
      return "Unbounded";
  }
  return "?";
}

int LpModel::AddVariable(double obj, double lo, double up) {
  cost.push_back(obj);
  lower.push_back(lo);
  upper.push_back(up);
  for (Row& row : rows) row.coefs.push_back(0.0);
  return num_vars() - 1;
}

int LpModel::AddRow(Row row) {
  rows.push_back(std::move(row));
  return num_rows() - 1;
}

void LpModel::Validate() const {
  const std::size_t n = cost.size();
  if (lower.size() != n || upper.size() != n) {
    throw BadShape("bound vectors do not match the variable count");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (lower[j] > upper[j]) {
      throw BadShape("variable " + std::to_string(j) + " has lower > upper");
    }
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].coefs.size() != n) {
      throw BadShape("row " + std::to_string(i) + " has " +
                     std::to_string(rows[i].coefs.size()) +
                     " coefficients, expected " + std::to_string(n));
    }
  }
}

double LpModel::Objective(std::span<const double> x) const {
  double v = 0.0;
  for (std::size_t j = 0; j < cost.size(); ++j) v += cost[j] * x[j];
  return v;
}

double LpModel::PrimalResidual(std::span<const double> x) const {
  double worst = 0.0;
  for (std::size_t j = 0; j < cost.size(); ++j) {
    worst = std::max(worst, lower[j] - x[j]);
    worst = std::max(worst, x[j] - upper[j]);
  }
  for (const Row& row : rows) {
    double act = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) act += row.coefs[j] * x[j];
    if (row.relation != Relation::kLessEqual) {
      worst = std::max(worst, row.rhs - act);
    }
    if (row.relation != Relation::kGreaterEqual) {
      worst = std::max(worst, act - row.rhs);
    }
  }
  return worst;
}

Simplex::Simplex(const LpModel& model, SimplexOptions options)
    : model_(model), options_(options) {
  model_.Validate();
  n_ = model_.num_vars();
  m_ = model_.num_rows();
  a_.resize(m_, n_);
  for (int i = 0; i < m_; ++i) {
    for (int j = 0; j < n_; ++j) a_(i, j) = model_.rows[i].coefs[j];
  }
  lo_.assign(model_.lower.begin(), model_.lower.end());
  up_.assign(model_.upper.begin(), model_.upper.end());
  cost_.assign(model_.cost.begin(), model_.cost.end());
  for (int i = 0; i < m_; ++i) {
    double lo, up;
    SlackBounds(model_.rows[i], &lo, &up);
    lo_.push_back(lo);
    up_.push_back(up);
    cost_.push_back(0.0);
  }
  InitSlackBasis();
}

void Simplex::InitSlackBasis() {
  status_.assign(n_ + m_, BasisStatus::kAtLower);
  x_.assign(n_ + m_, 0.0);
  head_.resize(m_);
  for (int j = 0; j < n_; ++j) PlaceNonbasic(j);
  for (int i = 0; i < m_; ++i) {
    status_[n_ + i] = BasisStatus::kBasic;
    head_[i] = n_ + i;
  }
  binv_ = -Eigen::MatrixXd::Identity(m_, m_);
  pivots_since_refactor_ = 0;
  fresh_factor_ = true;
}

// Moves a nonbasic column onto a bound compatible with its status.
void Simplex::PlaceNonbasic(int j) {
  BasisStatus& s = status_[j];
  const bool lo_ok = IsFinite(lo_[j]);
  const bool up_ok = IsFinite(up_[j]);
  if (s == BasisStatus::kAtLower && !lo_ok) {
    s = up_ok ? BasisStatus::kAtUpper : BasisStatus::kFreeZero;
  } else if (s == BasisStatus::kAtUpper && !up_ok) {
    s = lo_ok ? BasisStatus::kAtLower : BasisStatus::kFreeZero;
  } else if (s == BasisStatus::kFreeZero && (lo_ok || up_ok)) {
    s = lo_ok ? BasisStatus::kAtLower : BasisStatus::kAtUpper;
  }
  switch (s) {
    case BasisStatus::kAtLower:
      x_[j] = lo_[j];
      break;
    case BasisStatus::kAtUpper:
      x_[j] = up_[j];
      break;
    case BasisStatus::kFreeZero:
      x_[j] = 0.0;
      break;
    case BasisStatus::kBasic:
      break;
  }
}

Eigen::VectorXd Simplex::Column(int j) const {
  if (j < n_) return a_.col(j);
  Eigen::VectorXd col = Eigen::VectorXd::Zero(m_);
  col(j - n_) = -1.0;
  return col;
}

double Simplex::ColumnDot(int j, const Eigen::VectorXd& y) const {
  if (j < n_) return a_.col(j).dot(y);
  return -y(j - n_);
}

bool Simplex::Refactor() {
  pivots_since_refactor_ = 0;
  fresh_factor_ = true;
  if (m_ == 0) {
    binv_.resize(0, 0);
    return true;
  }
  Eigen::MatrixXd b(m_, m_);
  for (int k = 0; k < m_; ++k) b.col(k) = Column(head_[k]);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(b);
  if (!(lu.rcond() > 1e-13)) return false;
  binv_ = lu.inverse();
  return binv_.allFinite();
}

bool Simplex::RepairBasis() {
  if (m_ == 0) return Refactor();
  Eigen::MatrixXd b(m_, m_);
  for (int k = 0; k < m_; ++k) b.col(k) = Column(head_[k]);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(b);
  qr.setThreshold(1e-10);
  const int rank = static_cast<int>(qr.rank());
  if (rank == m_) return Refactor();

  // Independent basis positions and rows they cover.
  std::vector<int> keep(rank);
  Eigen::MatrixXd kept(m_, rank);
  for (int k = 0; k < rank; ++k) {
    keep[k] = qr.colsPermutation().indices()(k);
    kept.col(k) = b.col(keep[k]);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> rows(kept.transpose());
  std::vector<bool> covered(m_, false);
  for (int k = 0; k < rank; ++k) covered[rows.colsPermutation().indices()(k)] = true;

  std::vector<bool> kept_pos(m_, false);
  for (int k : keep) kept_pos[k] = true;
  int next_row = 0;
  for (int k = 0; k < m_; ++k) {
    if (kept_pos[k]) continue;
    while (covered[next_row]) ++next_row;
    const int dropped = head_[k];
    const int slack = n_ + next_row;
    covered[next_row] = true;
    status_[dropped] = x_[dropped] >= up_[dropped] ? BasisStatus::kAtUpper
                                                   : BasisStatus::kAtLower;
    PlaceNonbasic(dropped);
    status_[slack] = BasisStatus::kBasic;
    head_[k] = slack;
  }
  return Refactor();
}

void Simplex::ComputePrimal() {
  if (m_ == 0) return;
  Eigen::VectorXd xn = Eigen::VectorXd::Zero(n_);
  for (int j = 0; j < n_; ++j) {
    if (status_[j] != BasisStatus::kBasic) xn(j) = x_[j];
  }
  Eigen::VectorXd r = -(a_ * xn);
  for (int i = 0; i < m_; ++i) {
    if (status_[n_ + i] != BasisStatus::kBasic) r(i) += x_[n_ + i];
  }
  const Eigen::VectorXd xb = binv_ * r;
  for (int k = 0; k < m_; ++k) x_[head_[k]] = xb(k);
}

double Simplex::Infeasibility(int j) const {
  if (x_[j] < lo_[j] - options_.feas_tol) return lo_[j] - x_[j];
  if (x_[j] > up_[j] + options_.feas_tol) return x_[j] - up_[j];
  return 0.0;
}

LpOutcome Simplex::Solve() {
  const double ftol = options_.feas_tol;
  const double dtol = options_.opt_tol;
  int degenerate_streak = 0;
  bool bland = false;
  int iterations = 0;
  int refactor_failures = 0;

  if (!fresh_factor_ && !Refactor() && !RepairBasis()) InitSlackBasis();

  for (;;) {
    if (iterations >= options_.max_iterations) {
      throw NumericalFailure("simplex iteration limit reached");
    }
    if (pivots_since_refactor_ >= options_.refactor_every) {
      if (!Refactor()) {
        if (++refactor_failures > 3) {
          throw NumericalFailure("basis became singular");
        }
        if (!RepairBasis()) InitSlackBasis();
      }
    }
    ComputePrimal();

    // Phase selection and basic costs.
    Eigen::VectorXd cb(m_);
    Phase phase = Phase::kTwo;
    for (int k = 0; k < m_; ++k) {
      const int j = head_[k];
      if (x_[j] < lo_[j] - ftol) {
        cb(k) = -1.0;
        phase = Phase::kOne;
      } else if (x_[j] > up_[j] + ftol) {
        cb(k) = 1.0;
        phase = Phase::kOne;
      } else {
        cb(k) = 0.0;
      }
    }
    if (phase == Phase::kTwo) {
      for (int k = 0; k < m_; ++k) cb(k) = cost_[head_[k]];
    }
    const Eigen::VectorXd y =
        m_ > 0 ? Eigen::VectorXd(binv_.transpose() * cb) : Eigen::VectorXd();

    // Pricing.
    Eigen::VectorXd ya = m_ > 0 ? Eigen::VectorXd(a_.transpose() * y)
                                : Eigen::VectorXd::Zero(n_);
    int enter = -1;
    double best = 0.0;
    int dir = 0;
    for (int j = 0; j < n_ + m_; ++j) {
      const BasisStatus s = status_[j];
      if (s == BasisStatus::kBasic) continue;
      if (lo_[j] == up_[j]) continue;
      const double cj = phase == Phase::kTwo ? cost_[j] : 0.0;
      const double d = cj - (j < n_ ? ya(j) : -y(j - n_));
      int cand_dir = 0;
      if (s == BasisStatus::kAtLower && d < -dtol) cand_dir = 1;
      if (s == BasisStatus::kAtUpper && d > dtol) cand_dir = -1;
      if (s == BasisStatus::kFreeZero && std::abs(d) > dtol) {
        cand_dir = d < 0 ? 1 : -1;
      }
      if (cand_dir == 0) continue;
      if (bland) {
        enter = j;
        dir = cand_dir;
        break;
      }
      if (std::abs(d) > best) {
        best = std::abs(d);
        enter = j;
        dir = cand_dir;
      }
    }

    if (enter < 0) {
      if (!fresh_factor_) {
        if (!Refactor() && !RepairBasis()) InitSlackBasis();
        continue;
      }
      return MakeOutcome(
          phase == Phase::kOne ? LpStatus::kInfeasible : LpStatus::kOptimal,
          y);
    }

    // Ratio test.
    const Eigen::VectorXd alpha =
        m_ > 0 ? Eigen::VectorXd(binv_ * Column(enter)) : Eigen::VectorXd();
    const double range = up_[enter] - lo_[enter];
    int leave = -1;  // basis position
    double theta = kInf;
    bool leave_to_upper = false;

    auto target_of = [&](int k, double rate, double* dist, bool* to_upper) {
      const int j = head_[k];
      const double v = x_[j];
      if (rate < 0) {
        if (v > up_[j] + ftol) {
          *dist = v - up_[j];
          *to_upper = true;
          return true;
        }
        if (v >= lo_[j] - ftol && IsFinite(lo_[j])) {
          *dist = std::max(0.0, v - lo_[j]);
          *to_upper = false;
          return true;
        }
        return false;
      }
      if (v < lo_[j] - ftol) {
        *dist = lo_[j] - v;
        *to_upper = false;
        return true;
      }
      if (v <= up_[j] + ftol && IsFinite(up_[j])) {
        *dist = std::max(0.0, up_[j] - v);
        *to_upper = true;
        return true;
      }
      return false;
    };

    if (bland) {
      for (int k = 0; k < m_; ++k) {
        if (std::abs(alpha(k)) <= options_.pivot_tol) continue;
        const double rate = -dir * alpha(k);
        double dist;
        bool to_upper;
        if (!target_of(k, rate, &dist, &to_upper)) continue;
        const double ratio = dist / std::abs(rate);
        if (ratio < theta - 1e-15 ||
            (ratio <= theta + 1e-15 && leave >= 0 && head_[k] < head_[leave])) {
          theta = ratio;
          leave = k;
          leave_to_upper = to_upper;
        }
      }
    } else {
      // Harris two-pass ratio test.
      double theta_max = kInf;
      for (int k = 0; k < m_; ++k) {
        if (std::abs(alpha(k)) <= options_.pivot_tol) continue;
        const double rate = -dir * alpha(k);
        double dist;
        bool to_upper;
        if (!target_of(k, rate, &dist, &to_upper)) continue;
        theta_max = std::min(theta_max, (dist + ftol) / std::abs(rate));
      }
      double best_pivot = 0.0;
      for (int k = 0; k < m_; ++k) {
        if (std::abs(alpha(k)) <= options_.pivot_tol) continue;
        const double rate = -dir * alpha(k);
        double dist;
        bool to_upper;
        if (!target_of(k, rate, &dist, &to_upper)) continue;
        const double ratio = dist / std::abs(rate);
        if (ratio <= theta_max && std::abs(alpha(k)) > best_pivot) {
          best_pivot = std::abs(alpha(k));
          leave = k;
          theta = ratio;
          leave_to_upper = to_upper;
        }
      }
    }

    ++iterations;
    if (IsFinite(range) && range <= theta) {
      // Bound flip of the entering column.
      status_[enter] = dir > 0 ? BasisStatus::kAtUpper : BasisStatus::kAtLower;
      x_[enter] = dir > 0 ? up_[enter] : lo_[enter];
      fresh_factor_ = false;
      degenerate_streak = 0;
      bland = false;
      continue;
    }
    if (leave < 0) {
      if (phase == Phase::kOne || !fresh_factor_) {
        // Phase 1 always has a breakpoint in exact arithmetic.
        if (!Refactor()) {
          throw NumericalFailure("lost the basis during the ratio test");
        }
        if (phase == Phase::kOne) {
          if (++refactor_failures > 3) {
            throw NumericalFailure("phase 1 direction without breakpoint");
          }
        }
        continue;
      }
      LpOutcome out = MakeOutcome(LpStatus::kUnbounded, y);
      out.ray.assign(n_, 0.0);
      if (enter < n_) out.ray[enter] = dir;
      for (int k = 0; k < m_; ++k) {
        if (head_[k] < n_) out.ray[head_[k]] = -dir * alpha(k);
      }
      double scale = 0.0;
      for (double v : out.ray) scale = std::max(scale, std::abs(v));
      if (scale > 0) {
        for (double& v : out.ray) v /= scale;
      }
      out.iterations = iterations;
      return out;
    }

    if (theta <= kProgressStep) {
      if (++degenerate_streak >= options_.bland_after) bland = true;
    } else {
      degenerate_streak = 0;
      bland = false;
    }

    // Pivot: entering column takes position `leave`.
    const int out_var = head_[leave];
    status_[out_var] =
        leave_to_upper ? BasisStatus::kAtUpper : BasisStatus::kAtLower;
    x_[out_var] = leave_to_upper ? up_[out_var] : lo_[out_var];
    if (status_[enter] == BasisStatus::kFreeZero) x_[enter] = 0.0;
    x_[enter] += dir * theta;
    status_[enter] = BasisStatus::kBasic;
    head_[leave] = enter;

    const double piv = alpha(leave);
    Eigen::RowVectorXd prow = binv_.row(leave) / piv;
    binv_.noalias() -= alpha * prow;
    binv_.row(leave) = prow;
    ++pivots_since_refactor_;
    fresh_factor_ = false;
  }
}

LpOutcome Simplex::MakeOutcome(LpStatus status,
                               const Eigen::VectorXd& y) const {
  LpOutcome out;
  out.status = status;
  out.basis = GetBasis();
  if (status == LpStatus::kInfeasible) {
    out.farkas.assign(m_, 0.0);
    double l1 = 0.0;
    for (int i = 0; i < m_; ++i) {
      out.farkas[i] = y(i);
      l1 += std::abs(y(i));
    }
    if (l1 > 0) {
      for (double& v : out.farkas) v /= l1;
    }
    return out;
  }
  out.primal.assign(x_.begin(), x_.begin() + n_);
  out.objective = 0.0;
  for (int j = 0; j < n_; ++j) out.objective += cost_[j] * x_[j];
  if (status == LpStatus::kOptimal) {
    out.duals.assign(m_, 0.0);
    for (int i = 0; i < m_; ++i) out.duals[i] = y(i);
    out.reduced_costs.assign(n_, 0.0);
    for (int j = 0; j < n_; ++j) {
      out.reduced_costs[j] =
          status_[j] == BasisStatus::kBasic ? 0.0 : cost_[j] - ColumnDot(j, y);
    }
  }
  return out;
}

void Simplex::AddRows(std::span<const Row> rows) {
  if (rows.empty()) return;
  const int r = static_cast<int>(rows.size());
  for (const Row& row : rows) {
    if (static_cast<int>(row.coefs.size()) != n_) {
      throw BadShape("added row has " + std::to_string(row.coefs.size()) +
                     " coefficients, expected " + std::to_string(n_));
    }
    model_.rows.push_back(row);
  }
  const int m_new = m_ + r;
  a_.conservativeResize(m_new, n_);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < n_; ++j) a_(m_ + i, j) = rows[i].coefs[j];
  }
  // Slack columns are indexed after the structurals, so shift nothing: the
  // new slacks get indices n_ + m_ .. n_ + m_new - 1.
  for (int i = 0; i < r; ++i) {
    double lo, up;
    SlackBounds(rows[i], &lo, &up);
    lo_.push_back(lo);
    up_.push_back(up);
    cost_.push_back(0.0);
    status_.push_back(BasisStatus::kBasic);
    x_.push_back(0.0);
    head_.push_back(n_ + m_ + i);
  }
  // Inverse of [[B, 0], [C, -I]] is [[B^-1, 0], [C B^-1, -I]].
  Eigen::MatrixXd c(r, m_);
  for (int k = 0; k < m_; ++k) {
    const int j = head_[k];
    for (int i = 0; i < r; ++i) c(i, k) = j < n_ ? rows[i].coefs[j] : 0.0;
  }
  Eigen::MatrixXd binv(m_new, m_new);
  binv.setZero();
  binv.topLeftCorner(m_, m_) = binv_;
  if (m_ > 0) binv.bottomLeftCorner(r, m_) = c * binv_;
  binv.bottomRightCorner(r, r) = -Eigen::MatrixXd::Identity(r, r);
  binv_ = std::move(binv);
  m_ = m_new;
}

void Simplex::SetBounds(int var, double lower, double upper) {
  if (lower > upper) throw BadShape("SetBounds with lower > upper");
  lo_[var] = lower;
  up_[var] = upper;
  model_.lower[var] = lower;
  model_.upper[var] = upper;
  if (status_[var] != BasisStatus::kBasic) PlaceNonbasic(var);
}

void Simplex::SetCost(int var, double cost) {
  cost_[var] = cost;
  model_.cost[var] = cost;
}

Basis Simplex::GetBasis() const { return Basis{status_}; }

void Simplex::SetBasis(const Basis& basis) {
  const int total = n_ + m_;
  const int given = static_cast<int>(basis.columns.size());
  if (given < n_ || given > total) {
    InitSlackBasis();
    return;
  }
  // Rows appended after the basis was taken get basic slacks.
  std::vector<BasisStatus> s(basis.columns);
  s.resize(total, BasisStatus::kBasic);
  int basic = 0;
  for (BasisStatus b : s) basic += b == BasisStatus::kBasic;
  if (basic != m_) {
    InitSlackBasis();
    return;
  }
  status_ = std::move(s);
  int k = 0;
  for (int j = 0; j < total; ++j) {
    if (status_[j] == BasisStatus::kBasic) {
      head_[k++] = j;
    } else {
      PlaceNonbasic(j);
    }
  }
  if (!Refactor() && !RepairBasis()) InitSlackBasis();
}

LpOutcome SolveLp(const LpModel& model, const SimplexOptions& options) {
  Simplex simplex(model, options);
  return simplex.Solve();
}

LpOutcome AddRowsAndResolve(LpModel& model, std::span<const Row> new_rows,
                            const LpOutcome& warm,
                            const SimplexOptions& options) {
  Simplex simplex(model, options);
  if (!warm.basis.empty()) simplex.SetBasis(warm.basis);
  simplex.AddRows(new_rows);
  for (const Row& row : new_rows) model.rows.push_back(row);
  return simplex.Solve();
}

bool IsFarkasCertificate(const LpModel& model, std::span<const double> farkas,
                         double tol) {
  if (static_cast<int>(farkas.size()) != model.num_rows()) return false;
  const int n = model.num_vars();
  std::vector<double> g(n, 0.0);
  double beta = 0.0;
  for (int i = 0; i < model.num_rows(); ++i) {
    const Row& row = model.rows[i];
    const double r = farkas[i];
    if (row.relation == Relation::kGreaterEqual && r < -tol) return false;
    if (row.relation == Relation::kLessEqual && r > tol) return false;
    beta += r * row.rhs;
    for (int j = 0; j < n; ++j) g[j] += r * row.coefs[j];
  }
  double max_lhs = 0.0;
  for (int j = 0; j < n; ++j) {
    if (std::abs(g[j]) <= tol) continue;
    const double bound = g[j] > 0 ? model.upper[j] : model.lower[j];
    if (!IsFinite(bound)) return false;
    max_lhs += g[j] * bound;
  }
  return beta - max_lhs > tol;
}

}  // namespace bdx::lp
