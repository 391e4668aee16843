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

#include <algorithm>
#include <cmath>
#include <utility>

#include "bdx/common/errors.hpp"

namespace bdx::mbp {

Cut StrengthenCut(const StrengthenInputs& inp) {
  Cut out = inp.gamma;
  const double sigma = inp.sigma1 + inp.sigma2;
  if (sigma <= kStrengthenTol) return out;
  for (int j : inp.indices) {
    const double a1 = inp.gamma.alpha_x[j] - inp.delta1[j];
    const double a2 = inp.gamma.alpha_x[j] - inp.delta2[j];
    const double k = (a1 - a2) / sigma;
    const double v1 = a1 - inp.sigma1 * std::floor(k);
    const double v2 = a2 + inp.sigma2 * std::ceil(k);
    out.alpha_x[j] = std::min(v1, v2);
  }
  return out;
}

Cut LiftCut(const LiftInputs& inp) {
  Cut out = inp.gamma;
  for (int j : inp.fixed_zero) {
    out.alpha_x[j] += std::max(inp.zeta1[j], inp.zeta2[j]);
  }
  for (int j : inp.fixed_one) {
    const double m = std::max(inp.xi1[j], inp.xi2[j]);
    out.alpha_x[j] -= m;
    out.alpha_0 -= m;
  }
  return out;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> LiftedDeltas(
    const dcglp::DcglpDuals& duals, const std::vector<int>& fixed_zero) {
  Eigen::VectorXd d1 = duals.delta1;
  Eigen::VectorXd d2 = duals.delta2;
  for (int j : fixed_zero) {
    const double m = std::max(duals.zeta1[j], duals.zeta2[j]);
    d1[j] += m - duals.zeta1[j];
    d2[j] += m - duals.zeta2[j];
  }
  return {d1, d2};
}

std::vector<int> StrengthenIndices(const BlockMilp& milp) {
  std::vector<int> out;
  for (int j : milp.integer_indices) {
    if (milp.l[j] == 0.0) out.push_back(j);
  }
  return out;
}

Cut StrengthenResult(const BlockMilp& milp,
                     const dcglp::DisjunctiveResult& res) {
  StrengthenInputs inp;
  inp.gamma = res.cut;
  inp.sigma1 = res.duals.sigma1;
  inp.sigma2 = res.duals.sigma2;
  inp.delta1 = res.duals.delta1;
  inp.delta2 = res.duals.delta2;
  inp.indices = StrengthenIndices(milp);
  return StrengthenCut(inp);
}

ApproxResult ApproxOracle(dcglp::DisjunctiveOracle& oracle, int i,
                          const Eigen::VectorXd& x, const Eigen::VectorXd& t,
                          std::span<const Cut> seeds,
                          std::span<const Cut> previous, double int_tol) {
  const BlockMilp& milp = oracle.milp();
  if (!milp.IsMixedBinary()) {
    throw NotBinary("approximate oracle needs a mixed-binary instance");
  }
  ApproxResult out;
  for (int j : milp.integer_indices) {
    if (j == i) continue;
    if (std::abs(x[j]) <= int_tol) {
      out.fixings.zero.push_back(j);
    } else if (std::abs(x[j] - 1.0) <= int_tol) {
      out.fixings.one.push_back(j);
    }
  }
  const dcglp::Split split = dcglp::Split::Simple(milp.n_x(), i);
  try {
    out.result = oracle.Separate(split, x, t, seeds, previous, out.fixings);
  } catch (const Infeasible&) {
    // The face has no point on either side of the split; separate over the
    // whole set instead.
    if (out.fixings.empty()) throw;
    out.fixings = {};
    out.result = oracle.Separate(split, x, t, seeds, previous);
  }
  out.local_cut = out.result.cut;

  LiftInputs lift;
  lift.gamma = out.local_cut;
  lift.zeta1 = out.result.duals.zeta1;
  lift.zeta2 = out.result.duals.zeta2;
  lift.xi1 = out.result.duals.xi1;
  lift.xi2 = out.result.duals.xi2;
  lift.fixed_zero = out.fixings.zero;
  lift.fixed_one = out.fixings.one;
  out.result.cut = LiftCut(lift);
  auto [d1, d2] = LiftedDeltas(out.result.duals, out.fixings.zero);
  out.result.duals.delta1 = std::move(d1);
  out.result.duals.delta2 = std::move(d2);
  out.result.cut_trace.assign(1, out.result.cut);
  return out;
}

std::string ToString(SplitRule rule) {
  switch (rule) {
    case SplitRule::kMostFractional:
      return "most-fractional";
    case SplitRule::kLargestIndex:
      return "largest-index";
  }
  return "unknown";
}

SplitRule ParseSplitRule(const std::string& name) {
  if (name == "most-fractional") return SplitRule::kMostFractional;
  if (name == "largest-index") return SplitRule::kLargestIndex;
  throw UsageError("unknown split rule: " + name);
}

int SelectSplitIndex(const BlockMilp& milp, const Eigen::VectorXd& x,
                     SplitRule rule, double int_tol) {
  int best = -1;
  double best_score = -1.0;
  for (int j : milp.integer_indices) {
    const double frac = x[j] - std::floor(x[j]);
    const double dist = std::min(frac, 1.0 - frac);
    if (dist <= int_tol) continue;
    if (rule == SplitRule::kLargestIndex) {
      best = std::max(best, j);
    } else if (dist > best_score + 1e-12 ||
               (std::abs(dist - best_score) <= 1e-12 && j < best)) {
      best = j;
      best_score = dist;
    }
  }
  return best;
}

SpecializedConfig::SpecializedConfig() {
  dcglp.gap = 0.0;
  dcglp.stall_limit = 1 << 30;
}

namespace {

bool Integral(const BlockMilp& milp, const Eigen::VectorXd& x, double tol) {
  for (int j : milp.integer_indices) {
    if (std::abs(x[j] - std::round(x[j])) > tol) return false;
  }
  return true;
}

// Integer indices with a fractional value, largest first.
std::vector<int> FractionalDescending(const BlockMilp& milp,
                                      const Eigen::VectorXd& x, double tol) {
  std::vector<int> out;
  for (int j : milp.integer_indices) {
    if (std::abs(x[j] - std::round(x[j])) > tol) out.push_back(j);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

}  // namespace

SpecializedResult SpecializedBendersSeq(const BlockMilp& milp,
                                        benders::TypicalOracle& oracle,
                                        const SpecializedConfig& config) {
  const auto blocks = benders::MakeBlocks(milp, oracle.num_blocks() > 1);
  benders::Master master(milp, benders::TLowerBounds(milp, blocks));
  dcglp::DisjunctiveOracle dis(milp, oracle, config.dcglp);
  long max_rounds = config.max_rounds;
  if (max_rounds <= 0) {
    const int l = std::min<int>(static_cast<int>(milp.integer_indices.size()), 40);
    max_rounds = 10L << l;
  }

  SpecializedResult res;
  std::vector<std::pair<int, Cut>> disjunctive;
  while (true) {
    if (res.lp_master_solves >= config.max_master_solves) {
      throw IterLimit("master solve limit reached");
    }
    const lp::LpOutcome out = master.SolveLp();
    ++res.lp_master_solves;
    if (out.status == lp::LpStatus::kInfeasible) {
      throw Infeasible("LP master is infeasible");
    }
    if (out.status != lp::LpStatus::kOptimal) {
      throw NumericalFailure("LP master is unbounded");
    }
    res.lower_bounds.push_back(out.objective);
    res.x = master.X(out.primal);
    res.t = master.T(out.primal);
    const benders::Separation sep = benders::SeparateAll(oracle, res.x, res.t);
    if (!sep.cuts.empty()) {
      master.AddCuts(sep.cuts);
      res.benders_cuts += static_cast<long>(sep.cuts.size());
      continue;
    }
    if (Integral(milp, res.x, config.int_tol)) {
      res.objective = out.objective;
      break;
    }
    if (res.disjunctive_rounds >= max_rounds) {
      throw IterLimit("disjunctive round limit reached");
    }

    std::vector<Cut> seeds;
    for (const Cut& cut : master.cuts()) {
      if (cut.kind != benders::CutKind::kDisjunctive) seeds.push_back(cut);
    }
    bool added = false;
    for (int i : FractionalDescending(milp, res.x, config.int_tol)) {
      std::vector<Cut> previous;
      for (const auto& [k, cut] : disjunctive) {
        if (k < i) previous.push_back(cut);
      }
      dcglp::Split split = dcglp::Split::Simple(milp.n_x(), i);
      split.phi0 = static_cast<int>(std::floor(res.x[i]));
      const dcglp::DisjunctiveResult sep_d =
          dis.Separate(split, res.x, res.t, seeds, previous);
      if (sep_d.status == dcglp::DcglpStatus::kInsideHull ||
          sep_d.cut.Violation(res.x, res.t) <= benders::kCutViolTol) {
        continue;
      }
      master.AddCut(sep_d.cut);
      disjunctive.emplace_back(i, sep_d.cut);
      added = true;
      break;
    }
    ++res.disjunctive_rounds;
    if (!added) throw IterLimit("no split separates the fractional point");
  }
  res.cuts = master.cuts();
  res.relaxation_solves = dis.relaxation_solves();
  return res;
}

DbdCallback::DbdCallback(const BlockMilp& milp, benders::TypicalOracle& oracle,
                         DbdConfig config)
    : milp_(milp), config_(config), oracle_(milp, oracle, config.dcglp) {}

std::vector<Cut> DbdCallback::operator()(const bnb::NodeContext&,
                                         const Eigen::VectorXd& x,
                                         const Eigen::VectorXd& t,
                                         std::span<const Cut> master_cuts) {
  ++stats_.calls;
  std::vector<Cut> out;
  const int i = SelectSplitIndex(milp_, x, config_.split_rule, config_.int_tol);
  if (i < 0) return out;

  std::vector<Cut> seeds;
  std::vector<Cut> previous;
  for (const Cut& cut : master_cuts) {
    (cut.kind == benders::CutKind::kDisjunctive ? previous : seeds)
        .push_back(cut);
  }
  if (config_.reuse_relaxation) {
    seeds.insert(seeds.end(), pool_.begin(), pool_.end());
  }

  dcglp::DisjunctiveResult res;
  if (config_.lift && milp_.IsMixedBinary()) {
    res = ApproxOracle(oracle_, i, x, t, seeds, previous, config_.int_tol).result;
  } else {
    dcglp::Split split = dcglp::Split::Simple(milp_.n_x(), i);
    split.phi0 = static_cast<int>(std::floor(x[i]));
    res = oracle_.Separate(split, x, t, seeds, previous);
  }
  stats_.relaxation_iterations += res.iterations;

  if (res.status == dcglp::DcglpStatus::kInsideHull) {
    ++stats_.inside_hull;
  } else {
    Cut cut = res.cut;
    if (config_.strengthen && milp_.IsMixedBinary()) {
      cut = StrengthenResult(milp_, res);
    }
    if (cut.Violation(x, t) > benders::kCutViolTol) {
      out.push_back(cut);
      ++stats_.disjunctive_cuts;
    }
  }

  std::vector<dcglp::Byproduct> by = std::move(res.byproducts);
  std::stable_sort(by.begin(), by.end(),
                   [](const dcglp::Byproduct& a, const dcglp::Byproduct& b) {
                     return a.violation > b.violation;
                   });
  const auto keep = static_cast<std::size_t>(
      std::ceil(config_.keep_top * static_cast<double>(by.size()) - 1e-9));
  for (std::size_t k = 0; k < by.size(); ++k) {
    if (k < keep) {
      out.push_back(by[k].cut);
      ++stats_.byproduct_cuts;
    } else if (config_.reuse_relaxation) {
      // Cuts passed to the master come back through master_cuts.
      pool_.push_back(by[k].cut);
    }
  }
  return out;
}

benders::MasterUserCallback DbdCallback::AsUserCallback() {
  return [this](const bnb::NodeContext& ctx, const Eigen::VectorXd& x,
                const Eigen::VectorXd& t, std::span<const Cut> master_cuts) {
    return (*this)(ctx, x, t, master_cuts);
  };
}

}  // namespace bdx::mbp
