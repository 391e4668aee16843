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

#include <cmath>

#include "bdx/benders/drivers.hpp"
#include "bdx/problems/brute_force.hpp"
#include "bdx/problems/generators.hpp"
#include "doctest.h"
#include "support/reference.hpp"
#include "support/toy.hpp"

namespace {

using bdx::kInf;
using bdx::benders::BlockMilp;
using bdx::benders::ClassicalOracle;
using bdx::benders::Cut;
using bdx::dcglp::DcglpConfig;
using bdx::dcglp::DcglpModel;
using bdx::dcglp::DcglpStatus;
using bdx::dcglp::Split;
namespace bd = bdx::benders;
namespace pr = bdx::problems;

Eigen::VectorXd Scalar(double v) { return Eigen::VectorXd::Constant(1, v); }

DcglpConfig Exact(double p = kInf) {
  DcglpConfig cfg;
  cfg.p = p;
  cfg.gap = 0.0;
  cfg.stall_limit = 1 << 30;
  return cfg;
}

struct LpPoint {
  Eigen::VectorXd x, t;
  std::vector<Cut> cuts;
};

// Converged LP relaxation of the Benders master.
LpPoint RootPoint(const BlockMilp& milp, bd::TypicalOracle& oracle) {
  bd::Master master(milp, bd::TLowerBounds(
                              milp, bd::MakeBlocks(milp, oracle.num_blocks() > 1)));
  const auto loop = bd::RunLpCutLoop(master, oracle, 10000);
  REQUIRE(loop.converged);
  return {master.X(loop.outcome.primal), master.T(loop.outcome.primal),
          master.cuts()};
}

int MostFractional(const Eigen::VectorXd& x) {
  int best = -1;
  double score = 1e-6;
  for (int j = 0; j < x.size(); ++j) {
    const double f = std::min(x[j] - std::floor(x[j]), std::ceil(x[j]) - x[j]);
    if (f > score) {
      score = f;
      best = j;
    }
  }
  return best;
}

pr::RandomMilpParams Tiny(std::uint64_t seed) {
  pr::RandomMilpParams p;
  p.seed = seed;
  p.n_x = 3 + static_cast<int>(seed % 2);
  p.n_y = 3;
  p.m = 6;
  p.blocks = 1 + static_cast<int>(seed % 2);
  p.cover_row = seed % 3 == 0;
  return p;
}

}  // namespace

TEST_CASE("raising a cut scales the right-hand side by omega_0") {
  const BlockMilp toy = bdx::testing::TwoPieceToy();
  DcglpModel model(toy, 1, Split::Simple(1, 0), Scalar(0.5), Scalar(0.5), kInf);
  Cut cut = Cut::Zero(1, 1);
  cut.alpha_x[0] = 1.0;
  cut.alpha_t[0] = 1.0;
  cut.alpha_0 = 5.0;  // t >= 5 - x
  const auto rows = model.RaiseCut(cut);
  CHECK(rows[0].coefs[model.KappaX(0)] == 1.0);
  CHECK(rows[0].coefs[model.KappaT(0)] == 1.0);
  CHECK(rows[0].coefs[model.Kappa0()] == -5.0);
  CHECK(rows[1].coefs[model.NuX(0)] == 1.0);
  CHECK(rows[1].coefs[model.Nu0()] == -5.0);
  CHECK(rows[0].coefs[model.NuX(0)] == 0.0);

  Cut feas = Cut::Zero(1, 1);
  feas.alpha_x[0] = 1.0;
  feas.alpha_0 = 2.0;  // 0 >= 2 - x
  const auto frows = model.RaiseCut(feas);
  CHECK(frows[0].coefs[model.KappaT(0)] == 0.0);
  CHECK(frows[0].coefs[model.Kappa0()] == -2.0);

  Cut trivial = Cut::Zero(1, 1);
  trivial.alpha_t[0] = 1.0;
  trivial.alpha_0 = -1e99;
  CHECK(model.RaiseCut(trivial)[1].coefs[model.Nu0()] == 1e99);
}

TEST_CASE("disjunctive model rows") {
  const BlockMilp milp = pr::RandomMixedBinary(Tiny(4));
  const int nx = milp.n_x();
  const Eigen::VectorXd x = Eigen::VectorXd::Constant(nx, 0.5);
  DcglpModel model(milp, 1, Split::Simple(nx, 1), x, Scalar(0.0), kInf);
  // gamma rows, split rows, X_LP rows per side and inf-norm rows.
  CHECK(model.base_rows() == 1 + nx + 1 + 2 + 2 * (milp.m_d() + 2 * nx) + 2 * (nx + 1));
  CHECK(model.raised_rows() == 0);

  SUBCASE("simple split rows") {
    const auto& rows = model.model().rows;
    const auto& s1 = rows[1 + nx + 1];
    const auto& s2 = rows[1 + nx + 2];
    CHECK(s1.coefs[model.KappaX(1)] == 1.0);
    CHECK(s1.coefs[model.Kappa0()] == -1.0);
    CHECK(s1.coefs[model.KappaX(0)] == 0.0);
    CHECK(s2.coefs[model.NuX(1)] == -1.0);
    CHECK(s2.coefs[model.Nu0()] == 0.0);
  }
  SUBCASE("every raised cut adds a twin pair") {
    for (int k = 0; k < 3; ++k) {
      Cut c = Cut::Zero(nx, 1);
      c.alpha_x[k % nx] = 1.0;
      c.alpha_0 = k;
      c.kind = bd::CutKind::kDisjunctive;
      model.AddCut(c);
    }
    CHECK(model.raised_rows() == 6);
  }
  SUBCASE("one-norm adds auxiliary rows") {
    DcglpModel one(milp, 1, Split::Simple(nx, 1), x, Scalar(0.0), 1.0);
    CHECK(one.base_rows() == model.base_rows() + 1);
  }
  CHECK_THROWS_AS(DcglpModel(milp, 1, Split::Simple(nx, 0), x, Scalar(0.0), 2.0),
                  bdx::BadNorm);
}

TEST_CASE("split on a continuous column is rejected") {
  BlockMilp milp = bdx::testing::TwoPieceToy();
  milp.integer_indices.clear();
  CHECK_THROWS_AS(Split::Simple(1, 0).Check(milp), bdx::BadShape);
}

TEST_CASE("two-piece toy: deepest cut is t >= 1") {
  const BlockMilp toy = bdx::testing::TwoPieceToy();
  ClassicalOracle oracle(toy, false);
  const auto res = bdx::dcglp::TheOracle(toy, Split::Simple(1, 0), Scalar(0.5),
                                         Scalar(0.5), oracle, Exact());
  CHECK(res.status == DcglpStatus::kConverged);
  CHECK(res.tau == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(res.cut.alpha_x[0] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(res.cut.alpha_t[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(res.cut.alpha_0 == doctest::Approx(1.0).epsilon(1e-9));

  const auto inside = bdx::dcglp::TheOracle(toy, Split::Simple(1, 0), Scalar(0.5),
                                            Scalar(1.5), oracle, Exact());
  CHECK(inside.status == DcglpStatus::kInsideHull);
  CHECK(inside.tau <= 1e-7);
}

TEST_CASE("two copies of the toy as separate blocks") {
  const BlockMilp milp = bdx::testing::TwoCopyToy();
  ClassicalOracle oracle(milp, true);
  REQUIRE(oracle.num_blocks() == 2);
  // Hull: 0 <= x <= 1, t_1 >= 1, t_2 >= 1. From t = (0.25, 0.25) both
  // components must rise by 0.75.
  const auto low = bdx::dcglp::TheOracle(milp, Split::Simple(1, 0), Scalar(0.5),
                                         Eigen::Vector2d(0.25, 0.25), oracle, Exact());
  CHECK(low.tau == doctest::Approx(0.75).epsilon(1e-9));
  CHECK(low.cut.alpha_t.sum() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(low.cut.alpha_0 == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(low.cut.alpha_x[0]) <= 1e-9);
  const auto half = bdx::dcglp::TheOracle(milp, Split::Simple(1, 0), Scalar(0.5),
                                          Eigen::Vector2d(0.5, 0.5), oracle, Exact());
  CHECK(half.tau == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("a single block gives the same answer through either entry") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    pr::RandomMilpParams p = Tiny(seed);
    p.blocks = 1;
    const BlockMilp milp = pr::RandomMixedBinary(p);
    ClassicalOracle whole(milp, false);
    ClassicalOracle split_oracle(milp, true);
    REQUIRE(split_oracle.num_blocks() == 1);
    const LpPoint pt = RootPoint(milp, whole);
    const int i = MostFractional(pt.x);
    if (i < 0) continue;
    const auto a = bdx::dcglp::TheOracle(milp, Split::Simple(milp.n_x(), i), pt.x,
                                         pt.t, whole, Exact());
    const auto b = bdx::dcglp::TheOracle(milp, Split::Simple(milp.n_x(), i), pt.x,
                                         pt.t, split_oracle, Exact());
    CHECK(a.tau == doctest::Approx(b.tau).epsilon(1e-9));
  }
}

TEST_CASE("upper bound candidate") {
  bdx::dcglp::DcglpPoint pt;
  pt.kappa_x = Scalar(0.5);
  pt.kappa_t = Scalar(0.5);
  pt.kappa_0 = 0.5;
  pt.nu_x = Scalar(0.0);
  pt.nu_t = Scalar(0.5);
  pt.nu_0 = 0.5;
  pt.s_x = Scalar(0.0);
  pt.s_t = Scalar(0.5);
  pt.tau = 0.5;
  bdx::dcglp::BlockQuery in{true, {true}, {1.0}};
  CHECK(bdx::dcglp::UpperBoundCandidate(pt, in, in, Scalar(0.5), kInf) ==
        doctest::Approx(0.5));
  bdx::dcglp::BlockQuery out{true, {false}, {kInf}};
  CHECK(bdx::dcglp::UpperBoundCandidate(pt, out, in, Scalar(0.5), kInf) == kInf);
  // omega_t replaced by omega_0 f = 0.5 * 3.
  bdx::dcglp::BlockQuery high{true, {false}, {3.0}};
  CHECK(bdx::dcglp::UpperBoundCandidate(pt, high, in, Scalar(0.5), kInf) ==
        doctest::Approx(1.5));
}

TEST_CASE("toy run tracks a finite, nonincreasing upper bound") {
  const BlockMilp toy = bdx::testing::TwoPieceToy();
  ClassicalOracle oracle(toy, false);
  const auto res = bdx::dcglp::TheOracle(toy, Split::Simple(1, 0), Scalar(0.5),
                                         Scalar(0.0), oracle, Exact());
  REQUIRE(!res.ub_trace.empty());
  CHECK(std::isfinite(res.ub_trace.front()));
  for (size_t k = 1; k < res.ub_trace.size(); ++k) {
    CHECK(res.ub_trace[k] <= res.ub_trace[k - 1]);
  }
  CHECK(res.tau == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("disjunctive cuts: validity, normalization, depth and projection") {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 16; ++seed) {
    const BlockMilp milp = pr::RandomMixedBinary(Tiny(seed));
    for (bool separable : {false, true}) {
      ClassicalOracle oracle(milp, separable, 1e-9);
      const LpPoint pt = RootPoint(milp, oracle);
      const int i = MostFractional(pt.x);
      if (i < 0) continue;
      const Split split = Split::Simple(milp.n_x(), i);
      const pr::CutAuditor audit(milp, separable);
      const auto all = bdx::testing::AllEpigraphCuts(milp, separable);
      for (double p : {kInf, 1.0}) {
        CAPTURE(seed);
        CAPTURE(separable);
        CAPTURE(p);
        bdx::dcglp::DisjunctiveOracle dis(milp, oracle, Exact(p));
        const auto res = dis.Separate(split, pt.x, pt.t, pt.cuts);
        REQUIRE(res.status != DcglpStatus::kIterLimit);
        ++checked;
        for (size_t k = 1; k < res.tau_trace.size(); ++k) {
          CHECK(res.tau_trace[k] >= res.tau_trace[k - 1] - 1e-9);
        }
        for (const Cut& c : res.cut_trace) CHECK(audit.MaxViolation(c) <= 1e-6);
        for (const auto& b : res.byproducts) CHECK(audit.MaxViolation(b.cut) <= 1e-6);
        CHECK(bdx::dcglp::DualNorm(res.cut.alpha_x, res.cut.alpha_t, p) <= 1 + 1e-6);
        CHECK(res.cut.Violation(pt.x, pt.t) == doctest::Approx(res.tau).epsilon(1e-7));
        const auto full = bdx::testing::SolveFullDcglp(milp, oracle.num_blocks(), all,
                                                       split.phi, split.phi0, pt.x,
                                                       pt.t, p);
        REQUIRE(full.feasible);
        CHECK(std::abs(full.tau - res.tau) <= 1e-6);
      }
    }
  }
  CHECK(checked >= 10);
}

TEST_CASE("points inside the hull are reported as such") {
  const BlockMilp milp = pr::RandomMixedBinary(Tiny(2));
  ClassicalOracle oracle(milp, false);
  const pr::BruteForceResult bf = pr::BruteForceSolve(milp);
  // An integral feasible point with its exact value lies in every split hull.
  const double f = bd::EvalSubDual(milp, bf.x).value;
  const auto res = bdx::dcglp::TheOracle(milp, Split::Simple(milp.n_x(), 0), bf.x,
                                         Scalar(f), oracle, Exact());
  CHECK(res.status == DcglpStatus::kInsideHull);
}
