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

// The block-structured MILP
//
//     min  c^T x + d^T y
//     s.t. A x + B y >= b,   D x >= h,   l <= x <= u,   x_j integer (j in I),
//
// with y free. Sign restrictions on y are rows of B. An optional scenario
// partition splits rows and y columns into independent blocks so the value
// function separates as f(x) = sum_j f_j(x).

#ifndef BDX_BENDERS_BLOCK_MILP_HPP_
#define BDX_BENDERS_BLOCK_MILP_HPP_

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bdx/common/errors.hpp"

namespace bdx::benders {

struct Scenario {
  std::vector<int> rows;
  std::vector<int> y_cols;
};

struct BlockMilp {
  Eigen::VectorXd c;
  Eigen::VectorXd d;
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;
  Eigen::VectorXd b;
  Eigen::MatrixXd D;
  Eigen::VectorXd h;
  Eigen::VectorXd l;
  Eigen::VectorXd u;
  std::vector<int> integer_indices;
  std::vector<Scenario> scenarios;
  std::string name;

  int n_x() const { return static_cast<int>(c.size()); }
  int n_y() const { return static_cast<int>(d.size()); }
  int m() const { return static_cast<int>(b.size()); }
  int m_d() const { return static_cast<int>(h.size()); }
  bool IsInteger(int j) const;
  // Every integer column has bounds [0, 1].
  bool IsMixedBinary() const;

  // Throws InstanceShape on inconsistent dimensions, non-finite or inverted
  // bounds, bad integer indices or a scenario partition that does not cover
  // rows and y columns exactly.
  void Validate() const;
};

// One independent piece of the second stage: rows `rows` of (A, B, b)
// restricted to the columns `y_cols`.
struct SubBlock {
  int id = 0;
  std::vector<int> rows;
  std::vector<int> y_cols;
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;
  Eigen::VectorXd b;
  Eigen::VectorXd d;
};

// With `separable` and a scenario partition, one block per scenario;
// otherwise a single block holding everything.
std::vector<SubBlock> MakeBlocks(const BlockMilp& milp, bool separable);

// Throws DualEmpty when {pi >= 0 : B_j^T pi = d_j} is empty for some block.
void CheckDualFeasible(const BlockMilp& milp);

// min { d_j^T y_j : A_j x + B_j y_j >= b_j, D x >= h, l <= x <= u } per
// block; a valid lower bound on t_j over the continuous relaxation. Blocks
// whose problem is infeasible get 0.
std::vector<double> TLowerBounds(const BlockMilp& milp,
                                 const std::vector<SubBlock>& blocks);

}  // namespace bdx::benders

#endif  // BDX_BENDERS_BLOCK_MILP_HPP_
