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

// Enhancements for mixed-binary instances: coefficient strengthening and
// lifting of disjunctive cuts, the approximate oracle that separates over a
// face fixed by the integral coordinates of the point, the sequential method
// that never solves an integer master, and the branch-and-Benders user
// callback that emits disjunctive cuts.

#ifndef BDX_MBP_MBP_HPP_
#define BDX_MBP_MBP_HPP_

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bdx/benders/drivers.hpp"
#include "bdx/dcglp/dcglp.hpp"

namespace bdx::mbp {

using benders::BlockMilp;
using benders::Cut;

inline constexpr double kStrengthenTol = 1e-9;
inline constexpr double kIntTol = 1e-9;

struct StrengthenInputs {
  Cut gamma;
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  // Multipliers of omega_x >= 0 on both sides.
  Eigen::VectorXd delta1, delta2;
  // Integer columns with lower bound 0.
  std::vector<int> indices;
};

// For j in `indices`, with a^r = gamma_x[j] - delta^r[j] and
// k = (a^1 - a^2) / (sigma1 + sigma2):
//   gamma_x'[j] = min{a^1 - sigma1 floor(k), a^2 + sigma2 ceil(k)}.
// Returns the cut unchanged when sigma1 + sigma2 <= kStrengthenTol.
Cut StrengthenCut(const StrengthenInputs& inp);

struct LiftInputs {
  Cut gamma;
  Eigen::VectorXd zeta1, zeta2, xi1, xi2;
  std::vector<int> fixed_zero;
  std::vector<int> fixed_one;
};

// gamma_0 -= sum_{one} max(xi1, xi2); gamma_x[j] += max(zeta1, zeta2) on
// fixed_zero and -= max(xi1, xi2) on fixed_one.
Cut LiftCut(const LiftInputs& inp);

// Bound multipliers of the lifted certificate:
// delta^r[j] - zeta^r[j] + max(zeta1[j], zeta2[j]) for j in fixed_zero.
std::pair<Eigen::VectorXd, Eigen::VectorXd> LiftedDeltas(
    const dcglp::DcglpDuals& duals, const std::vector<int>& fixed_zero);

// Integer columns of `milp` with a zero lower bound.
std::vector<int> StrengthenIndices(const BlockMilp& milp);

// Strengthens the cut of a disjunctive result with its own multipliers.
Cut StrengthenResult(const BlockMilp& milp, const dcglp::DisjunctiveResult& res);

// Separation over conv(P^(e_i, 0)) restricted to the face where every
// integer column that is integral at x stays fixed, followed by lifting. The
// returned result carries the lifted cut, its lifted bound multipliers in
// duals.delta1/delta2 and the fixings used; cut_trace holds only the lifted
// cut. When the face misses both sides of the split the separation runs
// without fixings. Throws NotBinary unless the instance is mixed-binary.
struct ApproxResult {
  dcglp::DisjunctiveResult result;
  Cut local_cut;
  dcglp::Fixings fixings;
};
ApproxResult ApproxOracle(dcglp::DisjunctiveOracle& oracle, int i,
                          const Eigen::VectorXd& x, const Eigen::VectorXd& t,
                          std::span<const Cut> seeds = {},
                          std::span<const Cut> previous = {},
                          double int_tol = kIntTol);

enum class SplitRule { kMostFractional, kLargestIndex };
std::string ToString(SplitRule rule);
SplitRule ParseSplitRule(const std::string& name);

// Index of the integer column chosen by `rule` among those with a
// fractional value, or -1 when x is integral on the integer columns.
int SelectSplitIndex(const BlockMilp& milp, const Eigen::VectorXd& x,
                     SplitRule rule, double int_tol = kIntTol);

struct SpecializedConfig {
  dcglp::DcglpConfig dcglp;
  // Disjunctive rounds allowed; 0 means 10 * 2^l with l integer columns.
  long max_rounds = 0;
  long max_master_solves = 1000000;
  double int_tol = kIntTol;
  SpecializedConfig();
};

struct SpecializedResult {
  Eigen::VectorXd x;
  Eigen::VectorXd t;
  double objective = kInf;
  long lp_master_solves = 0;
  long integer_master_solves = 0;
  long benders_cuts = 0;
  long disjunctive_rounds = 0;
  long relaxation_solves = 0;
  std::vector<Cut> cuts;
  std::vector<double> lower_bounds;
};

// Sequential disjunctive Benders with an LP master only: cut the LP optimum
// with the typical oracle until it lies in the epigraph, then, while it is
// fractional, separate it with a disjunctive cut for the split on the
// largest fractional integer index, seeding the relaxation with the master
// cuts and the earlier disjunctive cuts of smaller split indices. General
// integer columns use the split floor(x_i). Throws Infeasible or IterLimit.
SpecializedResult SpecializedBendersSeq(const BlockMilp& milp,
                                        benders::TypicalOracle& oracle,
                                        const SpecializedConfig& config = {});

struct DbdConfig {
  dcglp::DcglpConfig dcglp;
  SplitRule split_rule = SplitRule::kMostFractional;
  // Fraction of byproduct cuts (most violated first) passed to the master.
  double keep_top = 1.0;
  // Keep every byproduct cut to seed later relaxations.
  bool reuse_relaxation = false;
  // Use the approximate oracle and lift its cut.
  bool lift = false;
  bool strengthen = true;
  double int_tol = kIntTol;
};

struct DbdStats {
  long calls = 0;
  long disjunctive_cuts = 0;
  long byproduct_cuts = 0;
  long inside_hull = 0;
  long relaxation_iterations = 0;
};

// User callback for branch-and-Benders-cut that separates fractional master
// points with disjunctive cuts.
class DbdCallback {
 public:
  DbdCallback(const BlockMilp& milp, benders::TypicalOracle& oracle,
              DbdConfig config = {});
  std::vector<Cut> operator()(const bnb::NodeContext& ctx,
                              const Eigen::VectorXd& x,
                              const Eigen::VectorXd& t,
                              std::span<const Cut> master_cuts);
  const DbdStats& stats() const { return stats_; }
  // Adapter for BendersBnb. The callback must outlive the returned function.
  benders::MasterUserCallback AsUserCallback();

 private:
  const BlockMilp& milp_;
  DbdConfig config_;
  dcglp::DisjunctiveOracle oracle_;
  std::vector<Cut> pool_;
  DbdStats stats_;
};

}  // namespace bdx::mbp

#endif  // BDX_MBP_MBP_HPP_
