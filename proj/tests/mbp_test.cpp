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

#include "bdx/mbp/mbp.hpp"

#include <cmath>

#include "bdx/common/errors.hpp"
#include "bdx/problems/brute_force.hpp"
#include "bdx/problems/generators.hpp"
#include "doctest.h"

namespace {

using bdx::kInf;
using bdx::benders::BlockMilp;
using bdx::benders::ClassicalOracle;
using bdx::benders::Cut;
namespace bd = bdx::benders;
namespace dc = bdx::dcglp;
namespace mbp = bdx::mbp;
namespace pr = bdx::problems;

pr::RandomMilpParams Params(std::uint64_t seed) {
  pr::RandomMilpParams p;
  p.seed = seed;
  p.n_x = 4 + static_cast<int>(seed % 3);
  p.n_y = 5 + static_cast<int>(seed % 4);
  p.m = 8 + static_cast<int>(seed % 5);
  p.blocks = 1 + static_cast<int>(seed % 2);
  p.cover_row = seed % 2 == 0;
  return p;
}

dc::DcglpConfig Exact() {
  dc::DcglpConfig cfg;
  cfg.gap = 0.0;
  cfg.stall_limit = 1 << 30;
  return cfg;
}

bool Close(double a, double b) {
  return std::abs(a - b) <= 1e-6 * (1.0 + std::abs(b));
}

}  // namespace

TEST_CASE("strengthening rounds the split multiplier") {
  mbp::StrengthenInputs inp;
  inp.gamma = Cut::Zero(1, 1);
  inp.gamma.alpha_x[0] = 2.3;
  inp.sigma1 = 1.0;
  inp.sigma2 = 1.0;
  inp.delta1 = Eigen::VectorXd::Zero(1);
  inp.delta2 = Eigen::VectorXd::Constant(1, 2.2);
  inp.indices = {0};
  // a = (2.3, 0.1), k = 1.1: min{2.3 - 1, 0.1 + 2} = 1.3.
  CHECK(mbp::StrengthenCut(inp).alpha_x[0] == doctest::Approx(1.3));

  inp.sigma1 = 0.0;
  inp.sigma2 = 0.0;
  CHECK(mbp::StrengthenCut(inp).alpha_x[0] == 2.3);
}

TEST_CASE("strengthening only touches the listed indices") {
  mbp::StrengthenInputs inp;
  inp.gamma = Cut::Zero(2, 1);
  inp.gamma.alpha_x << 2.3, 2.3;
  inp.sigma1 = 1.0;
  inp.sigma2 = 1.0;
  inp.delta1 = Eigen::VectorXd::Zero(2);
  inp.delta2 = Eigen::VectorXd::Constant(2, 2.2);
  inp.indices = {1};
  const Cut out = mbp::StrengthenCut(inp);
  CHECK(out.alpha_x[0] == 2.3);
  CHECK(out.alpha_x[1] == doctest::Approx(1.3));
}

TEST_CASE("lifting examples") {
  SUBCASE("index fixed at one") {
    mbp::LiftInputs inp;
    inp.gamma = Cut::Zero(1, 1);
    inp.gamma.alpha_x[0] = 0.2;
    inp.gamma.alpha_0 = 1.0;
    inp.zeta1 = inp.zeta2 = Eigen::VectorXd::Zero(1);
    inp.xi1 = Eigen::VectorXd::Constant(1, 0.3);
    inp.xi2 = Eigen::VectorXd::Constant(1, 0.5);
    inp.fixed_one = {0};
    const Cut out = mbp::LiftCut(inp);
    CHECK(out.alpha_0 == doctest::Approx(0.5));
    CHECK(out.alpha_x[0] == doctest::Approx(-0.3));
  }
  SUBCASE("index fixed at zero") {
    mbp::LiftInputs inp;
    inp.gamma = Cut::Zero(1, 1);
    inp.gamma.alpha_x[0] = -0.1;
    inp.zeta1 = Eigen::VectorXd::Zero(1);
    inp.zeta2 = Eigen::VectorXd::Constant(1, 0.4);
    inp.xi1 = inp.xi2 = Eigen::VectorXd::Zero(1);
    inp.fixed_zero = {0};
    const Cut out = mbp::LiftCut(inp);
    CHECK(out.alpha_0 == 0.0);
    CHECK(out.alpha_x[0] == doctest::Approx(0.3));
  }
}

TEST_CASE("split selection rules") {
  BlockMilp milp;
  milp.integer_indices = {0, 1, 2};
  const Eigen::Vector3d x(0.4, 0.0, 0.2);
  CHECK(mbp::SelectSplitIndex(milp, x, mbp::SplitRule::kMostFractional) == 0);
  CHECK(mbp::SelectSplitIndex(milp, x, mbp::SplitRule::kLargestIndex) == 2);
  CHECK(mbp::SelectSplitIndex(milp, Eigen::Vector3d(1, 0, 1),
                              mbp::SplitRule::kLargestIndex) == -1);
  CHECK(mbp::ParseSplitRule("largest-index") == mbp::SplitRule::kLargestIndex);
  CHECK_THROWS_AS(mbp::ParseSplitRule("random"), bdx::UsageError);
}

TEST_CASE("strengthened and lifted cuts stay valid and are no weaker") {
  int strengthened = 0;
  int lifted = 0;
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const BlockMilp milp = pr::RandomMixedBinary(Params(seed));
    for (bool separable : {false, true}) {
      ClassicalOracle oracle(milp, separable);
      const pr::CutAuditor audit(milp, separable);
      bd::Master master(milp, bd::TLowerBounds(milp, bd::MakeBlocks(milp, separable)));
      const auto loop = bd::RunLpCutLoop(master, oracle, 10000);
      REQUIRE(loop.converged);
      const Eigen::VectorXd x = master.X(loop.outcome.primal);
      const Eigen::VectorXd t = master.T(loop.outcome.primal);
      const int i = mbp::SelectSplitIndex(milp, x, mbp::SplitRule::kMostFractional);
      if (i < 0) continue;
      CAPTURE(seed);
      CAPTURE(separable);
      dc::DisjunctiveOracle dis(milp, oracle, Exact());

      const auto full = dis.Separate(dc::Split::Simple(milp.n_x(), i), x, t,
                                     master.cuts());
      if (full.status != dc::DcglpStatus::kInsideHull) {
        const Cut s = mbp::StrengthenResult(milp, full);
        CHECK(audit.MaxViolation(s) <= 1e-6);
        for (int j = 0; j < milp.n_x(); ++j) {
          CHECK(s.alpha_x[j] <= full.cut.alpha_x[j] + 1e-12);
        }
        CHECK(s.Violation(x, t) >= full.cut.Violation(x, t) - 1e-9);
        if ((s.alpha_x - full.cut.alpha_x).norm() > 1e-9) ++strengthened;
      }

      const auto approx = mbp::ApproxOracle(dis, i, x, t, master.cuts());
      CHECK(audit.MaxViolation(approx.result.cut) <= 1e-6);
      if (!approx.fixings.empty()) ++lifted;
      if (approx.result.status != dc::DcglpStatus::kInsideHull) {
        // Lifting leaves the value at the point unchanged.
        CHECK(approx.result.cut.Violation(x, t) ==
              doctest::Approx(approx.local_cut.Violation(x, t)).epsilon(1e-7));
        const Cut s = mbp::StrengthenResult(milp, approx.result);
        CHECK(audit.MaxViolation(s) <= 1e-6);
      }
    }
  }
  CHECK(strengthened > 0);
  CHECK(lifted > 0);
}

TEST_CASE("the approximate oracle needs binaries") {
  const BlockMilp milp = pr::BuildMotivatingAnalog(1);
  ClassicalOracle oracle(milp, false);
  dc::DisjunctiveOracle dis(milp, oracle);
  CHECK_THROWS_AS(mbp::ApproxOracle(dis, 1, Eigen::Vector2d(0.0, 0.5),
                                    Eigen::VectorXd::Zero(1)),
                  bdx::NotBinary);
}

TEST_CASE("the LP-only sequential method solves mixed-binary instances") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const BlockMilp milp = pr::RandomMixedBinary(Params(seed));
    const auto bf = pr::BruteForceSolve(milp);
    ClassicalOracle oracle(milp, seed % 2 == 1);
    CAPTURE(seed);
    const auto res = mbp::SpecializedBendersSeq(milp, oracle);
    CHECK(Close(res.objective, bf.objective));
    CHECK(res.integer_master_solves == 0);
    const long l = static_cast<long>(milp.integer_indices.size());
    CHECK(res.disjunctive_rounds <= 10L << l);
    for (size_t k = 1; k < res.lower_bounds.size(); ++k) {
      CHECK(res.lower_bounds[k] >= res.lower_bounds[k - 1] - 1e-7);
    }
    for (int j : milp.integer_indices) {
      CHECK(std::abs(res.x[j] - std::round(res.x[j])) <= 1e-9);
    }
  }
}

TEST_CASE("the LP-only sequential method on the motivating analog") {
  const BlockMilp milp = pr::BuildMotivatingAnalog(1);
  ClassicalOracle oracle(milp, false);
  const auto res = mbp::SpecializedBendersSeq(milp, oracle);
  CHECK(res.objective == doctest::Approx(-1.0));
  CHECK(res.x[0] == doctest::Approx(0.0));
  CHECK(res.x[1] == doctest::Approx(1.0));
  CHECK(res.disjunctive_rounds >= 1);
}

TEST_CASE("disjunctive branch-and-Benders agrees with the extensive form") {
  struct Variant {
    bool lift;
    bool reuse;
    double keep_top;
    mbp::SplitRule rule;
  };
  const Variant variants[] = {
      {false, false, 1.0, mbp::SplitRule::kMostFractional},
      {true, true, 1.0, mbp::SplitRule::kMostFractional},
      {false, true, 0.05, mbp::SplitRule::kLargestIndex},
  };
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const BlockMilp milp = pr::RandomMixedBinary(Params(seed));
    const auto ext = bd::SolveExtensive(milp);
    REQUIRE(ext.bnb.status == bdx::bnb::BnbStatus::kOptimal);
    for (const Variant& v : variants) {
      ClassicalOracle oracle(milp, true);
      mbp::DbdConfig cfg;
      cfg.lift = v.lift;
      cfg.reuse_relaxation = v.reuse;
      cfg.keep_top = v.keep_top;
      cfg.split_rule = v.rule;
      mbp::DbdCallback dbd(milp, oracle, cfg);
      bd::BendersBnbConfig bcfg;
      bcfg.bnb.user_cut_frequency = 1;
      bcfg.bnb.audit = true;
      const auto r = bd::BendersBnb(milp, oracle, dbd.AsUserCallback(), bcfg);
      CAPTURE(seed);
      CAPTURE(v.lift);
      REQUIRE(r.bnb.status == bdx::bnb::BnbStatus::kOptimal);
      CHECK(Close(r.bnb.objective, ext.bnb.objective));
      CHECK(r.bnb.audit_violations == 0);
      CHECK(r.disjunctive_cuts == dbd.stats().disjunctive_cuts);
    }
  }
}

TEST_CASE("the approximate oracle drops fixings when the face is empty") {
  pr::RandomMilpParams p;
  p.seed = 41;
  p.n_x = 10;
  p.n_y = 6;
  p.m = 18;
  p.blocks = 3;
  const BlockMilp milp = pr::RandomMixedBinary(p);
  ClassicalOracle oracle(milp, false);
  bd::Master master(milp, bd::TLowerBounds(milp, bd::MakeBlocks(milp, false)));
  const auto loop = bd::RunLpCutLoop(master, oracle, 10000);
  REQUIRE(loop.converged);
  const Eigen::VectorXd x = master.X(loop.outcome.primal);
  const Eigen::VectorXd t = master.T(loop.outcome.primal);
  const int i = mbp::SelectSplitIndex(milp, x, mbp::SplitRule::kMostFractional);
  REQUIRE(i >= 0);
  dc::DisjunctiveOracle dis(milp, oracle, Exact());
  const auto approx = mbp::ApproxOracle(dis, i, x, t, master.cuts());
  CHECK(approx.fixings.empty());
  const auto full = dis.Separate(dc::Split::Simple(milp.n_x(), i), x, t, master.cuts());
  CHECK(approx.result.tau == doctest::Approx(full.tau).epsilon(1e-7));
  const pr::CutAuditor audit(milp, false);
  CHECK(audit.MaxViolation(approx.result.cut) <= 1e-6);
}
