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

// Runs one solution method on one instance and reports node counts, bounds,
// cut counts and the bound trajectory.

#ifndef BDX_HARNESS_HARNESS_HPP_
#define BDX_HARNESS_HARNESS_HPP_

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bdx/benders/block_milp.hpp"
#include "bdx/benders/oracle.hpp"
#include "bdx/bnb/branch_and_bound.hpp"
#include "bdx/mbp/mbp.hpp"
#include "json.hpp"

namespace bdx::harness {

using benders::BlockMilp;

// ext: extensive form; cbd: branch-and-Benders-cut; dbd: cbd with
// disjunctive user cuts; dbd-seq: the LP-only sequential method.
enum class Method { kExt, kCbd, kDbd, kDbdSeq };
std::string ToString(Method method);
// Throws UsageError.
Method ParseMethod(const std::string& name);

struct RunConfig {
  Method method = Method::kDbd;
  double p = kInf;
  double dcglp_gap = 1e-3;
  int stall_limit = 3;
  // User cuts every this many fractional nodes (the root included).
  int cut_frequency = 500;
  double keep_top = 1.0;
  bool reuse_relaxation = false;
  bool lift = false;
  double time_limit_s = kInf;
  long node_limit = std::numeric_limits<long>::max();
  std::uint64_t seed = 1;
  mbp::SplitRule split_rule = mbp::SplitRule::kMostFractional;

  // Throws UsageError unless limits are positive, keep_top is in (0, 1] and
  // p is 1 or inf.
  void Validate() const;
};

// "default", "uflp" (keep_top 0.05) or "snip" (reuse and lift). Throws
// UsageError for other names.
void ApplyProfile(RunConfig& config, const std::string& profile);

nlohmann::json ConfigToJson(const RunConfig& config);

struct CutCounts {
  long optimality = 0;
  long feasibility = 0;
  long disjunctive = 0;
};

struct RunReport {
  std::string instance_id;
  Method method = Method::kDbd;
  // Optimal, Infeasible, TimeLimit, NodeLimit or IterLimit.
  std::string status;
  double objective = kInf;
  double lower_bound = -kInf;
  long node_count = 0;
  double wall_time_s = 0.0;
  CutCounts cuts;
  std::vector<bnb::TrajectoryPoint> trajectory;
  Eigen::VectorXd x;

  bool optimal() const { return status == "Optimal"; }
};

// Solves `milp` with config.method. When `oracle` is null the classical
// oracle is used, split by scenario when the instance has scenarios.
RunReport Run(const BlockMilp& milp, const RunConfig& config,
              const std::string& instance_id,
              benders::TypicalOracle* oracle = nullptr);

// The typical oracle the CLI uses for an instance: the knapsack oracle when
// the metadata carries a facility location transport matrix, otherwise the
// classical one.
std::unique_ptr<benders::TypicalOracle> MakeOracle(const BlockMilp& milp,
                                                   const nlohmann::json& meta);

nlohmann::json ReportToJson(const RunReport& report,
                            const RunConfig& config);
// Reads back the fields written by ReportToJson (trajectory and x included).
RunReport ReportFromJson(const nlohmann::json& j);

// Trajectory rows with strictly increasing node counts (the last row per
// count is kept) and a running maximum of the lower bound.
std::vector<bnb::TrajectoryPoint> NormalizeTrajectory(
    const std::vector<bnb::TrajectoryPoint>& rows);

inline constexpr const char* kTrajectoryHeader =
    "node_count,lower_bound,upper_bound,time_s";
std::string TrajectoryCsv(const std::vector<bnb::TrajectoryPoint>& rows);

inline constexpr const char* kCompareHeader =
    "method,status,objective,lower_bound,node_count,wall_time_s,"
    "optimality_cuts,feasibility_cuts,disjunctive_cuts";
std::string CompareCsv(const std::vector<RunReport>& reports);

// Relative agreement |a - b| <= tol (1 + |b|).
bool SameObjective(double a, double b, double tol = 1e-6);

}  // namespace bdx::harness

#endif  // BDX_HARNESS_HARNESS_HPP_
