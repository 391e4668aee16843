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

#include <cmath>
#include <random>

#include "bdx/lp/simplex.hpp"
#include "doctest.h"

namespace {

using bdx::kInf;
using bdx::lp::LpModel;
using bdx::lp::LpOutcome;
using bdx::lp::LpStatus;
using bdx::lp::Relation;
using bdx::lp::Row;

LpModel OneVar(double cost, double lo = -kInf, double up = kInf) {
  LpModel m;
  m.AddVariable(cost, lo, up);
  return m;
}

// Checks the optimality certificate of an Optimal outcome: primal and dual
// feasibility, complementary slackness and a zero duality gap.
void CheckOptimalCertificate(const LpModel& m, const LpOutcome& out,
                             double tol = 1e-7) {
  REQUIRE(out.status == LpStatus::kOptimal);
  CHECK(m.PrimalResidual(out.primal) <= tol);
  double dual_obj = 0.0;
  for (int i = 0; i < m.num_rows(); ++i) {
    const Row& row = m.rows[i];
    const double y = out.duals[i];
    if (row.relation == Relation::kGreaterEqual) CHECK(y >= -tol);
    if (row.relation == Relation::kLessEqual) CHECK(y <= tol);
    double act = 0.0;
    for (int j = 0; j < m.num_vars(); ++j) act += row.coefs[j] * out.primal[j];
    CHECK(std::abs(y * (act - row.rhs)) <= tol * (1 + std::abs(row.rhs)));
    dual_obj += y * row.rhs;
  }
  for (int j = 0; j < m.num_vars(); ++j) {
    const double d = out.reduced_costs[j];
    const double x = out.primal[j];
    const bool at_lo = std::abs(x - m.lower[j]) <= tol;
    const bool at_up = std::abs(x - m.upper[j]) <= tol;
    if (!at_lo) CHECK(d <= tol);
    if (!at_up) CHECK(d >= -tol);
    dual_obj += d * x;
  }
  CHECK(std::abs(dual_obj - out.objective) <=
        1e-7 * (1 + std::abs(out.objective)));
}

// Random LP with a known feasible point and bounded objective (all variables
// boxed).
LpModel RandomBoxedLp(std::mt19937_64& rng, int n, int m) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> rel(0, 2);
  LpModel lp;
  std::vector<double> x0(n);
  for (int j = 0; j < n; ++j) {
    x0[j] = u(rng);
    lp.AddVariable(u(rng), x0[j] - 1.0 - std::abs(u(rng)),
                   x0[j] + 1.0 + std::abs(u(rng)));
  }
  for (int i = 0; i < m; ++i) {
    Row row;
    row.coefs.resize(n);
    double act = 0.0;
    for (int j = 0; j < n; ++j) {
      row.coefs[j] = (rng() % 3 == 0) ? 0.0 : u(rng);
      act += row.coefs[j] * x0[j];
    }
    switch (rel(rng)) {
      case 0:
        row.relation = Relation::kGreaterEqual;
        row.rhs = act - std::abs(u(rng));
        break;
      case 1:
        row.relation = Relation::kLessEqual;
        row.rhs = act + std::abs(u(rng));
        break;
      default:
        row.relation = Relation::kEqual;
        row.rhs = act;
        break;
    }
    lp.AddRow(row);
  }
  return lp;
}

}  // namespace

TEST_CASE("one-row LP: min x s.t. x >= 3") {
  LpModel m = OneVar(1.0);
  m.AddRow({{1.0}, Relation::kGreaterEqual, 3.0});
  const LpOutcome out = bdx::lp::SolveLp(m);
  REQUIRE(out.status == LpStatus::kOptimal);
  CHECK(out.primal[0] == doctest::Approx(3.0));
  CHECK(out.duals[0] == doctest::Approx(1.0));
  CHECK(out.objective == doctest::Approx(3.0));
}

TEST_CASE("inconsistent pair yields the Farkas ray (1,1)") {
  LpModel m = OneVar(0.0);
  m.AddRow({{1.0}, Relation::kGreaterEqual, 1.0});
  m.AddRow({{-1.0}, Relation::kGreaterEqual, 0.0});
  const LpOutcome out = bdx::lp::SolveLp(m);
  REQUIRE(out.status == LpStatus::kInfeasible);
  CHECK(out.farkas[0] == doctest::Approx(0.5));
  CHECK(out.farkas[1] == doctest::Approx(0.5));
  CHECK(bdx::lp::IsFarkasCertificate(m, out.farkas));
}

TEST_CASE("unbounded direction") {
  LpModel m = OneVar(-1.0);
  m.AddRow({{1.0}, Relation::kGreaterEqual, 0.0});
  const LpOutcome out = bdx::lp::SolveLp(m);
  REQUIRE(out.status == LpStatus::kUnbounded);
  CHECK(out.ray[0] == doctest::Approx(1.0));
}

TEST_CASE("adding rows and resolving") {
  LpModel m = OneVar(-1.0);
  m.AddRow({{1.0}, Relation::kLessEqual, 2.0});
  const LpOutcome first = bdx::lp::SolveLp(m);
  REQUIRE(first.status == LpStatus::kOptimal);
  CHECK(first.objective == doctest::Approx(-2.0));

  SUBCASE("redundant row keeps the objective") {
    LpModel copy = m;
    const Row extra{{1.0}, Relation::kLessEqual, 5.0};
    const LpOutcome out = bdx::lp::AddRowsAndResolve(
        copy, std::span<const Row>(&extra, 1), first);
    REQUIRE(out.status == LpStatus::kOptimal);
    CHECK(out.objective == doctest::Approx(-2.0).epsilon(1e-9));
    CHECK(copy.num_rows() == 2);
  }
  SUBCASE("cutting row moves the optimum") {
    LpModel copy = m;
    const Row extra{{1.0}, Relation::kLessEqual, 1.0};
    const LpOutcome out = bdx::lp::AddRowsAndResolve(
        copy, std::span<const Row>(&extra, 1), first);
    REQUIRE(out.status == LpStatus::kOptimal);
    CHECK(out.objective == doctest::Approx(-1.0));
  }
  SUBCASE("inconsistent row gives a ray touching it") {
    LpModel copy = m;
    const Row extra{{1.0}, Relation::kGreaterEqual, 3.0};
    const LpOutcome out = bdx::lp::AddRowsAndResolve(
        copy, std::span<const Row>(&extra, 1), first);
    REQUIRE(out.status == LpStatus::kInfeasible);
    CHECK(std::abs(out.farkas[1]) > 0.1);
    CHECK(bdx::lp::IsFarkasCertificate(copy, out.farkas));
  }
}

TEST_CASE("bounded variables and bound flips") {
  // max x + y s.t. x + y <= 1.5, x,y in [0,1].
  LpModel m;
  m.AddVariable(-1.0, 0.0, 1.0);
  m.AddVariable(-1.0, 0.0, 1.0);
  m.AddRow({{1.0, 1.0}, Relation::kLessEqual, 1.5});
  const LpOutcome out = bdx::lp::SolveLp(m);
  CheckOptimalCertificate(m, out);
  CHECK(out.objective == doctest::Approx(-1.5));
}

TEST_CASE("infeasibility against variable bounds is certified") {
  LpModel m;
  m.AddVariable(0.0, 0.0, 1.0);
  m.AddVariable(0.0, 0.0, 1.0);
  m.AddRow({{1.0, 1.0}, Relation::kGreaterEqual, 3.0});
  const LpOutcome out = bdx::lp::SolveLp(m);
  REQUIRE(out.status == LpStatus::kInfeasible);
  CHECK(bdx::lp::IsFarkasCertificate(m, out.farkas));
}

TEST_CASE("malformed models are rejected") {
  LpModel m = OneVar(0.0, 1.0, 0.0);
  CHECK_THROWS_AS(bdx::lp::SolveLp(m), bdx::BadShape);
  LpModel n = OneVar(0.0);
  n.rows.push_back({{1.0, 2.0}, Relation::kEqual, 0.0});
  CHECK_THROWS_AS(bdx::lp::SolveLp(n), bdx::BadShape);
}

TEST_CASE("random boxed LPs satisfy the optimality certificate") {
  std::mt19937_64 rng(20261016);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 12);
    const int m = 1 + static_cast<int>(rng() % 15);
    const LpModel lp = RandomBoxedLp(rng, n, m);
    const LpOutcome out = bdx::lp::SolveLp(lp);
    CAPTURE(trial);
    CheckOptimalCertificate(lp, out);
    // Repeat solve is deterministic.
    const LpOutcome again = bdx::lp::SolveLp(lp);
    CHECK(std::abs(again.objective - out.objective) <= 1e-12);
  }
}

TEST_CASE("random free-variable LPs: optimal, unbounded or certified") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int counts[3] = {0, 0, 0};
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const int m = 1 + static_cast<int>(rng() % 8);
    LpModel lp;
    for (int j = 0; j < n; ++j) lp.AddVariable(u(rng), -kInf, kInf);
    for (int i = 0; i < m; ++i) {
      Row row;
      for (int j = 0; j < n; ++j) row.coefs.push_back(u(rng));
      row.relation = Relation::kGreaterEqual;
      row.rhs = u(rng);
      lp.AddRow(row);
    }
    const LpOutcome out = bdx::lp::SolveLp(lp);
    CAPTURE(trial);
    switch (out.status) {
      case LpStatus::kOptimal:
        CheckOptimalCertificate(lp, out);
        break;
      case LpStatus::kInfeasible:
        CHECK(bdx::lp::IsFarkasCertificate(lp, out.farkas));
        break;
      case LpStatus::kUnbounded: {
        double improve = 0.0;
        for (int j = 0; j < n; ++j) improve += lp.cost[j] * out.ray[j];
        CHECK(improve < -1e-9);
        for (const Row& row : lp.rows) {
          double act = 0.0;
          for (int j = 0; j < n; ++j) act += row.coefs[j] * out.ray[j];
          CHECK(act >= -1e-9);
        }
        break;
      }
    }
    ++counts[static_cast<int>(out.status)];
  }
  CHECK(counts[0] > 0);
  CHECK(counts[1] > 0);
  CHECK(counts[2] > 0);
}

TEST_CASE("warm restarts after bound changes match cold solves") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    LpModel lp = RandomBoxedLp(rng, 8, 10);
    bdx::lp::Simplex warm(lp);
    const LpOutcome first = warm.Solve();
    REQUIRE(first.status == LpStatus::kOptimal);
    const int j = static_cast<int>(rng() % 8);
    const double mid = first.primal[j];
    if (mid - 0.1 < lp.lower[j]) continue;
    warm.SetBounds(j, lp.lower[j], mid - 0.1);
    lp.upper[j] = mid - 0.1;
    const LpOutcome hot = warm.Solve();
    const LpOutcome cold = bdx::lp::SolveLp(lp);
    REQUIRE(hot.status == cold.status);
    if (cold.status == LpStatus::kOptimal) {
      CHECK(std::abs(hot.objective - cold.objective) <=
            1e-8 * (1 + std::abs(cold.objective)));
    }
  }
}
