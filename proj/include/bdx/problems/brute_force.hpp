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

// Reference solver and cut auditor by full enumeration of the integer
// columns.

#ifndef BDX_PROBLEMS_BRUTE_FORCE_HPP_
#define BDX_PROBLEMS_BRUTE_FORCE_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "bdx/benders/block_milp.hpp"
#include "bdx/benders/oracle.hpp"

namespace bdx::problems {

using benders::BlockMilp;
using benders::Cut;

inline constexpr std::int64_t kEnumerationCap = std::int64_t{1} << 20;

struct BruteForceResult {
  double objective = kInf;
  Eigen::VectorXd x;
  std::int64_t feasible_points = 0;
};

// Enumerates every integral assignment of the integer columns (in
// lexicographic order) and minimizes the remaining LP. Ties keep the first
// point found. Throws TooLarge above `cap` assignments.
BruteForceResult BruteForceSolve(const BlockMilp& milp,
                                 std::int64_t cap = kEnumerationCap);

// Calls `visit` with every integral x in the box satisfying D x >= h.
// Requires every column to be integer.
void ForEachIntegerPoint(const BlockMilp& milp,
                         const std::function<void(const Eigen::VectorXd&)>& visit,
                         std::int64_t cap = kEnumerationCap);

// Enumerates every point (x, f(x)) of the Benders reformulation with x
// integral and x in dom f, storing the per-block values f_j(x). Requires
// every x column to be integer.
class CutAuditor {
 public:
  CutAuditor(const BlockMilp& milp, bool separable,
             std::int64_t cap = kEnumerationCap);

  // max over feasible points of alpha_0 - alpha_x^T x - alpha_t^T f(x);
  // +inf when alpha_t has a negative entry. -inf without feasible points.
  double MaxViolation(const Cut& cut) const;
  int num_blocks() const { return num_blocks_; }
  const std::vector<Eigen::VectorXd>& points() const { return points_; }
  const std::vector<Eigen::VectorXd>& values() const { return values_; }

 private:
  int num_blocks_;
  std::vector<Eigen::VectorXd> points_;
  std::vector<Eigen::VectorXd> values_;
};

}  // namespace bdx::problems

#endif  // BDX_PROBLEMS_BRUTE_FORCE_HPP_
