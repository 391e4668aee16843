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

#include "bdx/problems/brute_force.hpp"

#include <cmath>

#include "bdx/lp/simplex.hpp"

namespace bdx::problems {

namespace {

std::int64_t CountAssignments(const BlockMilp& milp, std::int64_t cap) {
  std::int64_t total = 1;
  for (int j : milp.integer_indices) {
    const auto width = static_cast<std::int64_t>(milp.u[j] - milp.l[j] + 1);
    if (total > cap / width) {
      throw TooLarge("more than " + std::to_string(cap) + " integer points");
    }
    total *= width;
  }
  return total;
}

// Advances `x` on the integer columns in lexicographic order (last column
// fastest). Returns false after the last assignment.
bool Next(const BlockMilp& milp, Eigen::VectorXd& x) {
  for (int k = static_cast<int>(milp.integer_indices.size()) - 1; k >= 0; --k) {
    const int j = milp.integer_indices[k];
    if (x[j] < milp.u[j]) {
      x[j] += 1.0;
      return true;
    }
    x[j] = milp.l[j];
  }
  return false;
}

// Variables x then `y_cols`; rows of `rows` plus D x >= h. Costs are c on x
// when `with_c`, d on y.
lp::LpModel PrimalModel(const BlockMilp& milp, const std::vector<int>& rows,
                        const std::vector<int>& y_cols, bool with_c) {
  lp::LpModel model;
  const int nx = milp.n_x();
  for (int j = 0; j < nx; ++j) {
    model.AddVariable(with_c ? milp.c[j] : 0.0, milp.l[j], milp.u[j]);
  }
  for (int q : y_cols) model.AddVariable(milp.d[q], -kInf, kInf);
  for (int i : rows) {
    lp::Row row;
    row.coefs.resize(model.num_vars());
    for (int j = 0; j < nx; ++j) row.coefs[j] = milp.A(i, j);
    for (size_t k = 0; k < y_cols.size(); ++k) {
      row.coefs[nx + k] = milp.B(i, y_cols[k]);
    }
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

std::vector<int> Range(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

BruteForceResult BruteForceSolve(const BlockMilp& milp, std::int64_t cap) {
  milp.Validate();
  CountAssignments(milp, cap);
  lp::Simplex simplex(
      PrimalModel(milp, Range(milp.m()), Range(milp.n_y()), true));
  BruteForceResult res;
  Eigen::VectorXd x = milp.l;
  do {
    for (int j : milp.integer_indices) simplex.SetBounds(j, x[j], x[j]);
    const lp::LpOutcome out = simplex.Solve();
    if (out.status == lp::LpStatus::kUnbounded) {
      throw DualEmpty("unbounded second stage during enumeration");
    }
    if (out.status != lp::LpStatus::kOptimal) continue;
    ++res.feasible_points;
    if (out.objective < res.objective - 1e-9) {
      res.objective = out.objective;
      res.x = Eigen::Map<const Eigen::VectorXd>(out.primal.data(), milp.n_x());
      for (int j : milp.integer_indices) res.x[j] = x[j];
    }
  } while (Next(milp, x));
  return res;
}

void ForEachIntegerPoint(
    const BlockMilp& milp,
    const std::function<void(const Eigen::VectorXd&)>& visit,
    std::int64_t cap) {
  if (static_cast<int>(milp.integer_indices.size()) != milp.n_x()) {
    throw InstanceShape("enumeration needs every x column integer");
  }
  CountAssignments(milp, cap);
  Eigen::VectorXd x = milp.l;
  do {
    if (milp.m_d() > 0 &&
        ((milp.D * x - milp.h).array() < -1e-9).any()) {
      continue;
    }
    visit(x);
  } while (Next(milp, x));
}

CutAuditor::CutAuditor(const BlockMilp& milp, bool separable,
                       std::int64_t cap) {
  std::vector<benders::Scenario> parts;
  if (separable && !milp.scenarios.empty()) {
    parts = milp.scenarios;
  } else {
    parts.push_back({Range(milp.m()), Range(milp.n_y())});
  }
  num_blocks_ = static_cast<int>(parts.size());
  std::vector<lp::Simplex> solvers;
  for (const benders::Scenario& part : parts) {
    solvers.emplace_back(PrimalModel(milp, part.rows, part.y_cols, false));
  }
  ForEachIntegerPoint(
      milp,
      [&](const Eigen::VectorXd& x) {
        Eigen::VectorXd f(num_blocks_);
        for (int k = 0; k < num_blocks_; ++k) {
          for (int j = 0; j < milp.n_x(); ++j) {
            solvers[k].SetBounds(j, x[j], x[j]);
          }
          const lp::LpOutcome out = solvers[k].Solve();
          if (out.status == lp::LpStatus::kUnbounded) {
            throw DualEmpty("unbounded second stage during enumeration");
          }
          if (out.status != lp::LpStatus::kOptimal) return;
          f[k] = out.objective;
        }
        points_.push_back(x);
        values_.push_back(std::move(f));
      },
      cap);
}

double CutAuditor::MaxViolation(const Cut& cut) const {
  // A single t coefficient against split blocks bounds the total value.
  const bool total = cut.alpha_t.size() == 1 && num_blocks_ > 1;
  if (!total && cut.alpha_t.size() != num_blocks_) {
    throw BadShape("cut has " + std::to_string(cut.alpha_t.size()) +
                   " t coefficients, auditor has " +
                   std::to_string(num_blocks_) + " blocks");
  }
  double worst = -kInf;
  if (points_.empty()) return worst;
  if ((cut.alpha_t.array() < -1e-12).any()) return kInf;
  for (size_t p = 0; p < points_.size(); ++p) {
    const double v =
        total ? cut.alpha_0 - cut.alpha_x.dot(points_[p]) -
                    cut.alpha_t[0] * values_[p].sum()
              : cut.Violation(points_[p], values_[p]);
    worst = std::max(worst, v);
  }
  return worst;
}

}  // namespace bdx::problems
