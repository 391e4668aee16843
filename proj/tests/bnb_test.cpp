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

#include "bdx/bnb/branch_and_bound.hpp"
#include "doctest.h"

namespace {

using bdx::kInf;
using bdx::bnb::BnbConfig;
using bdx::bnb::BnbResult;
using bdx::bnb::BnbStatus;
using bdx::bnb::BranchAndBound;
using bdx::lp::LpModel;
using bdx::lp::Relation;
using bdx::lp::Row;

// Enumerates every binary assignment of the first `nb` columns and solves the
// remaining LP.
double EnumerateBinaries(const LpModel& m, int nb) {
  double best = kInf;
  for (int mask = 0; mask < (1 << nb); ++mask) {
    LpModel fixed = m;
    for (int j = 0; j < nb; ++j) {
      fixed.lower[j] = fixed.upper[j] = (mask >> j) & 1;
    }
    const auto out = bdx::lp::SolveLp(fixed);
    if (out.status == bdx::lp::LpStatus::kOptimal) {
      best = std::min(best, out.objective);
    }
  }
  return best;
}

LpModel RandomMip(std::mt19937_64& rng, int nb, int nc, int m) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  LpModel lp;
  for (int j = 0; j < nb; ++j) lp.AddVariable(u(rng) * 3, 0.0, 1.0);
  for (int j = 0; j < nc; ++j) lp.AddVariable(u(rng), 0.0, 2.0);
  for (int i = 0; i < m; ++i) {
    Row row;
    for (int j = 0; j < nb + nc; ++j) row.coefs.push_back(u(rng));
    row.relation = Relation::kLessEqual;
    row.rhs = 0.3 + std::abs(u(rng));
    lp.AddRow(row);
  }
  return lp;
}

std::vector<int> Iota(int n) {
  std::vector<int> v(n);
  for (int j = 0; j < n; ++j) v[j] = j;
  return v;
}

}  // namespace

TEST_CASE("integral root relaxation needs one node") {
  LpModel m;
  m.AddVariable(1.0, 0.0, 1.0);
  m.AddVariable(1.0, 0.0, 1.0);
  m.AddRow({{1.0, 1.0}, Relation::kGreaterEqual, 1.0});
  const BnbResult r = bdx::bnb::SolveBnb(m, Iota(2), nullptr, nullptr);
  CHECK(r.status == BnbStatus::kOptimal);
  CHECK(r.node_count == 1);
  CHECK(r.objective == doctest::Approx(1.0));
}

TEST_CASE("binary bounded by a half row branches once") {
  LpModel m;
  m.AddVariable(-1.0, 0.0, 1.0);
  m.AddRow({{1.0}, Relation::kLessEqual, 0.5});
  BranchAndBound bnb(m, {0});
  const BnbResult r = bnb.Solve();
  CHECK(r.status == BnbStatus::kOptimal);
  CHECK(r.objective == doctest::Approx(0.0));
  CHECK(r.incumbent[0] == 0.0);
  CHECK(bnb.num_nodes() == 3);
  CHECK(r.node_count == 3);
}

TEST_CASE("node fixings follow the branching path") {
  std::mt19937_64 rng(3);
  const LpModel m = RandomMip(rng, 6, 2, 5);
  BranchAndBound bnb(m, Iota(6));
  bnb.Solve();
  const auto root = bnb.NodeFixings(0);
  CHECK(root.fixed_zero.empty());
  CHECK(root.fixed_one.empty());
  for (int id = 1; id < bnb.num_nodes(); ++id) {
    std::vector<int> zero, one;
    for (int k = id; k != 0; k = bnb.node(k).parent) {
      const auto& n = bnb.node(k);
      (n.branch_up ? one : zero).push_back(n.branch_var);
    }
    std::sort(zero.begin(), zero.end());
    std::sort(one.begin(), one.end());
    const auto sets = bnb.NodeFixings(id);
    CHECK(sets.fixed_zero == zero);
    CHECK(sets.fixed_one == one);
    for (int j : sets.fixed_zero) {
      CHECK(std::find(sets.fixed_one.begin(), sets.fixed_one.end(), j) ==
            sets.fixed_one.end());
    }
  }
  CHECK_THROWS_AS(bnb.NodeFixings(bnb.num_nodes()), bdx::UnknownNode);
  CHECK_THROWS_AS(bnb.NodeFixings(-1), bdx::UnknownNode);
}

TEST_CASE("first up branch fixes the variable to one") {
  // min -x0 - x1 s.t. x0 + x1 <= 1.5: root is fractional.
  LpModel m;
  m.AddVariable(-1.0, 0.0, 1.0);
  m.AddVariable(-1.0, 0.0, 1.0);
  m.AddRow({{1.0, 1.0}, Relation::kLessEqual, 1.5});
  BranchAndBound bnb(m, {0, 1});
  bnb.Solve();
  REQUIRE(bnb.num_nodes() >= 3);
  const auto& up = bnb.node(1);
  CHECK(up.branch_up);
  const auto sets = bnb.NodeFixings(1);
  CHECK(sets.fixed_zero.empty());
  CHECK(sets.fixed_one == std::vector<int>{up.branch_var});
  const auto down = bnb.NodeFixings(2);
  CHECK(down.fixed_zero == std::vector<int>{up.branch_var});
}

TEST_CASE("random small MILPs match enumeration") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int nb = 2 + static_cast<int>(rng() % 6);
    const LpModel m = RandomMip(rng, nb, 3, 4);
    const double expect = EnumerateBinaries(m, nb);
    const BnbResult r = bdx::bnb::SolveBnb(m, Iota(nb), nullptr, nullptr);
    CAPTURE(trial);
    REQUIRE(r.status == BnbStatus::kOptimal);
    CHECK(std::abs(r.objective - expect) <= 1e-6);
    CHECK(r.lower_bound <= r.objective + 1e-6);
    for (size_t k = 1; k < r.trajectory.size(); ++k) {
      CHECK(r.trajectory[k].node_count > r.trajectory[k - 1].node_count);
      CHECK(r.trajectory[k].lower_bound >= r.trajectory[k - 1].lower_bound);
    }
  }
}

TEST_CASE("lazy rows reproduce the explicit model") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int nb = 5;
    LpModel full = RandomMip(rng, nb, 2, 5);
    LpModel base = full;
    const std::vector<Row> hidden(base.rows.begin() + 2, base.rows.end());
    base.rows.resize(2);
    auto lazy = [&](const bdx::bnb::NodeContext&, std::span<const double> x) {
      bdx::bnb::CallbackVerdict v;
      for (const Row& row : hidden) {
        double act = 0.0;
        for (size_t j = 0; j < x.size(); ++j) act += row.coefs[j] * x[j];
        if (act > row.rhs + 1e-9) v.cuts.push_back(row);
      }
      v.accept = v.cuts.empty();
      return v;
    };
    const BnbResult r = bdx::bnb::SolveBnb(base, Iota(nb), lazy, nullptr);
    CAPTURE(trial);
    REQUIRE(r.status == BnbStatus::kOptimal);
    CHECK(std::abs(r.objective - EnumerateBinaries(full, nb)) <= 1e-6);
  }
}

TEST_CASE("user callback cadence includes the first fractional node") {
  std::mt19937_64 rng(21);
  const LpModel m = RandomMip(rng, 8, 2, 6);
  std::vector<long> seen;
  auto user = [&](const bdx::bnb::NodeContext& ctx, std::span<const double>) {
    seen.push_back(ctx.fractional_nodes);
    return std::vector<Row>{};
  };
  BnbConfig cfg;
  cfg.user_cut_frequency = 3;
  const BnbResult r = bdx::bnb::SolveBnb(m, Iota(8), nullptr, user, cfg);
  REQUIRE(r.status == BnbStatus::kOptimal);
  if (r.node_count > 1) {
    REQUIRE(!seen.empty());
    CHECK(seen.front() == 0);
    for (long c : seen) CHECK(c % 3 == 0);
  }
}

TEST_CASE("audit mode flags cuts that remove incumbents") {
  // Find an instance where the lazy callback sees at least two candidates,
  // then reject the second one with a row that also removes the first.
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const LpModel m = RandomMip(rng, 6, 1, 4);
    int calls = 0;
    auto count = [&](const bdx::bnb::NodeContext&, std::span<const double>) {
      ++calls;
      return bdx::bnb::CallbackVerdict{};
    };
    bdx::bnb::SolveBnb(m, Iota(6), count, nullptr);
    if (calls < 2) continue;
    calls = 0;
    Row kill;
    kill.coefs.assign(7, 0.0);
    kill.coefs[6] = 1.0;
    kill.relation = Relation::kLessEqual;
    kill.rhs = -1.0;
    auto lazy = [&](const bdx::bnb::NodeContext&, std::span<const double>) {
      bdx::bnb::CallbackVerdict v;
      if (++calls == 2) {
        v.accept = false;
        v.cuts.push_back(kill);
      }
      return v;
    };
    BnbConfig cfg;
    cfg.audit = true;
    const BnbResult r = bdx::bnb::SolveBnb(m, Iota(6), lazy, nullptr, cfg);
    CHECK(r.audit_violations >= 1);
    return;
  }
  FAIL("no instance with two integral candidates");
}

TEST_CASE("limits stop with bounds") {
  std::mt19937_64 rng(8);
  const LpModel m = RandomMip(rng, 10, 2, 8);
  BnbConfig cfg;
  cfg.time_limit_s = 0.0;
  const BnbResult t = bdx::bnb::SolveBnb(m, Iota(10), nullptr, nullptr, cfg);
  if (t.status == BnbStatus::kTimeLimit) {
    CHECK(t.node_count == 1);
    CHECK(t.lower_bound == doctest::Approx(t.root_bound));
  }
  BnbConfig nl;
  nl.node_limit = 2;
  const BnbResult n = bdx::bnb::SolveBnb(m, Iota(10), nullptr, nullptr, nl);
  if (n.status == BnbStatus::kNodeLimit) CHECK(n.node_count == 2);
}

TEST_CASE("infeasible integer model") {
  LpModel m;
  m.AddVariable(0.0, 0.0, 1.0);
  m.AddRow({{1.0}, Relation::kGreaterEqual, 0.3});
  m.AddRow({{1.0}, Relation::kLessEqual, 0.7});
  const BnbResult r = bdx::bnb::SolveBnb(m, Iota(1), nullptr, nullptr);
  CHECK(r.status == BnbStatus::kInfeasible);
  CHECK(r.objective == kInf);
}
