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

#include "bdx/benders/block_milp.hpp"

#include <algorithm>
#include <cmath>

#include "bdx/lp/simplex.hpp"

namespace bdx::benders {

bool BlockMilp::IsInteger(int j) const {
  return std::find(integer_indices.begin(), integer_indices.end(), j) !=
         integer_indices.end();
}

bool BlockMilp::IsMixedBinary() const {
  for (int j : integer_indices) {
    if (l[j] != 0.0 || u[j] != 1.0) return false;
  }
  return true;
}

void BlockMilp::Validate() const {
  const int nx = n_x();
  const int ny = n_y();
  if (A.rows() != m() || A.cols() != nx) throw InstanceShape("A dimensions");
  if (B.rows() != m() || B.cols() != ny) throw InstanceShape("B dimensions");
  if (D.rows() != m_d() || D.cols() != nx) throw InstanceShape("D dimensions");
  if (l.size() != nx || u.size() != nx) throw InstanceShape("bound lengths");
  for (int j = 0; j < nx; ++j) {
    if (!std::isfinite(l[j]) || !std::isfinite(u[j]) || !(l[j] < u[j])) {
      throw InstanceShape("bounds of x" + std::to_string(j) +
                          " must satisfy -inf < l < u < inf");
    }
  }
  std::vector<int> sorted = integer_indices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InstanceShape("duplicate integer index");
  }
  for (int j : integer_indices) {
    if (j < 0 || j >= nx) throw InstanceShape("integer index out of range");
    if (l[j] != std::floor(l[j]) || u[j] != std::floor(u[j])) {
      throw InstanceShape("integer column with fractional bounds");
    }
  }
  if (scenarios.empty()) return;
  std::vector<int> row_owner(m(), -1);
  std::vector<int> col_owner(ny, -1);
  for (size_t k = 0; k < scenarios.size(); ++k) {
    for (int i : scenarios[k].rows) {
      if (i < 0 || i >= m() || row_owner[i] != -1) {
        throw InstanceShape("scenario rows do not partition the rows");
      }
      row_owner[i] = static_cast<int>(k);
    }
    for (int j : scenarios[k].y_cols) {
      if (j < 0 || j >= ny || col_owner[j] != -1) {
        throw InstanceShape("scenario columns do not partition y");
      }
      col_owner[j] = static_cast<int>(k);
    }
  }
  if (std::count(row_owner.begin(), row_owner.end(), -1) != 0 ||
      std::count(col_owner.begin(), col_owner.end(), -1) != 0) {
    throw InstanceShape("scenario partition is incomplete");
  }
  for (int i = 0; i < m(); ++i) {
    for (int j = 0; j < ny; ++j) {
      if (B(i, j) != 0.0 && row_owner[i] != col_owner[j]) {
        throw InstanceShape("row couples y columns of different scenarios");
      }
    }
  }
}

std::vector<SubBlock> MakeBlocks(const BlockMilp& milp, bool separable) {
  std::vector<Scenario> parts;
  if (separable && !milp.scenarios.empty()) {
    parts = milp.scenarios;
  } else {
    Scenario all;
    for (int i = 0; i < milp.m(); ++i) all.rows.push_back(i);
    for (int j = 0; j < milp.n_y(); ++j) all.y_cols.push_back(j);
    parts.push_back(std::move(all));
  }
  std::vector<SubBlock> blocks;
  for (size_t k = 0; k < parts.size(); ++k) {
    SubBlock blk;
    blk.id = static_cast<int>(k);
    blk.rows = parts[k].rows;
    blk.y_cols = parts[k].y_cols;
    const int mr = static_cast<int>(blk.rows.size());
    const int my = static_cast<int>(blk.y_cols.size());
    blk.A.resize(mr, milp.n_x());
    blk.B.resize(mr, my);
    blk.b.resize(mr);
    blk.d.resize(my);
    for (int r = 0; r < mr; ++r) {
      blk.A.row(r) = milp.A.row(blk.rows[r]);
      blk.b[r] = milp.b[blk.rows[r]];
      for (int q = 0; q < my; ++q) blk.B(r, q) = milp.B(blk.rows[r], blk.y_cols[q]);
    }
    for (int q = 0; q < my; ++q) blk.d[q] = milp.d[blk.y_cols[q]];
    blocks.push_back(std::move(blk));
  }
  return blocks;
}

void CheckDualFeasible(const BlockMilp& milp) {
  for (const SubBlock& blk : MakeBlocks(milp, true)) {
    lp::LpModel model;
    for (int i = 0; i < blk.B.rows(); ++i) model.AddVariable(0.0, 0.0, kInf);
    for (int q = 0; q < blk.B.cols(); ++q) {
      lp::Row row;
      row.coefs.resize(blk.B.rows());
      for (int i = 0; i < blk.B.rows(); ++i) row.coefs[i] = blk.B(i, q);
      row.relation = lp::Relation::kEqual;
      row.rhs = blk.d[q];
      model.AddRow(std::move(row));
    }
    if (lp::SolveLp(model).status == lp::LpStatus::kInfeasible) {
      throw DualEmpty("block " + std::to_string(blk.id));
    }
  }
}

std::vector<double> TLowerBounds(const BlockMilp& milp,
                                 const std::vector<SubBlock>& blocks) {
  std::vector<double> bounds;
  const int nx = milp.n_x();
  for (const SubBlock& blk : blocks) {
    lp::LpModel model;
    for (int j = 0; j < nx; ++j) model.AddVariable(0.0, milp.l[j], milp.u[j]);
    for (int q = 0; q < blk.d.size(); ++q) model.AddVariable(blk.d[q], -kInf, kInf);
    for (int r = 0; r < blk.A.rows(); ++r) {
      lp::Row row;
      row.coefs.resize(model.num_vars());
      for (int j = 0; j < nx; ++j) row.coefs[j] = blk.A(r, j);
      for (int q = 0; q < blk.B.cols(); ++q) row.coefs[nx + q] = blk.B(r, q);
      row.rhs = blk.b[r];
      model.AddRow(std::move(row));
    }
    for (int r = 0; r < milp.m_d(); ++r) {
      lp::Row row;
      row.coefs.assign(model.num_vars(), 0.0);
      for (int j = 0; j < nx; ++j) row.coefs[j] = milp.D(r, j);
      row.rhs = milp.h[r];
      model.AddRow(std::move(row));
    }
    const lp::LpOutcome out = lp::SolveLp(model);
    if (out.status == lp::LpStatus::kOptimal) {
      bounds.push_back(out.objective);
    } else if (out.status == lp::LpStatus::kInfeasible) {
      bounds.push_back(0.0);
    } else {
      throw DualEmpty("unbounded second stage in block " +
                      std::to_string(blk.id));
    }
  }
  return bounds;
}

}  // namespace bdx::benders
