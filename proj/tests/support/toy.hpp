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

// Hand-built instances shared by the unit tests.

#ifndef BDX_TESTS_SUPPORT_TOY_HPP_
#define BDX_TESTS_SUPPORT_TOY_HPP_

#include "bdx/benders/block_milp.hpp"

namespace bdx::testing {

// One binary x, f(x) = min { y : y >= 1 - x, y >= x } = max(1 - x, x), c = 0.
inline benders::BlockMilp TwoPieceToy() {
  benders::BlockMilp milp;
  milp.c = Eigen::VectorXd::Zero(1);
  milp.d = Eigen::VectorXd::Ones(1);
  milp.A.resize(2, 1);
  milp.A << 1.0, -1.0;
  milp.B = Eigen::MatrixXd::Ones(2, 1);
  milp.b = Eigen::Vector2d(1.0, 0.0);
  milp.D.resize(0, 1);
  milp.h.resize(0);
  milp.l = Eigen::VectorXd::Zero(1);
  milp.u = Eigen::VectorXd::Ones(1);
  milp.integer_indices = {0};
  milp.name = "two-piece-toy";
  return milp;
}

// Two independent blocks, each a copy of the two-piece toy over the same x.
inline benders::BlockMilp TwoCopyToy() {
  benders::BlockMilp milp;
  milp.c = Eigen::VectorXd::Zero(1);
  milp.d = Eigen::VectorXd::Ones(2);
  milp.A.resize(4, 1);
  milp.A << 1.0, -1.0, 1.0, -1.0;
  milp.B = Eigen::MatrixXd::Zero(4, 2);
  milp.B(0, 0) = milp.B(1, 0) = 1.0;
  milp.B(2, 1) = milp.B(3, 1) = 1.0;
  milp.b = Eigen::Vector4d(1.0, 0.0, 1.0, 0.0);
  milp.D.resize(0, 1);
  milp.h.resize(0);
  milp.l = Eigen::VectorXd::Zero(1);
  milp.u = Eigen::VectorXd::Ones(1);
  milp.integer_indices = {0};
  milp.scenarios = {{{0, 1}, {0}}, {{2, 3}, {1}}};
  milp.name = "two-copy-toy";
  return milp;
}

}  // namespace bdx::testing

#endif  // BDX_TESTS_SUPPORT_TOY_HPP_
