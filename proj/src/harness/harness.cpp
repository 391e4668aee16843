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

#include "bdx/harness/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "bdx/benders/drivers.hpp"
#include "bdx/common/errors.hpp"

namespace bdx::harness {

namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// JSON has no infinity; bounds that are infinite are written as null.
nlohmann::json Real(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

double RealOr(const nlohmann::json& j, const char* key, double fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  return j.at(key).get<double>();
}

std::string Csv(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

bnb::BnbConfig BnbSettings(const RunConfig& config) {
  bnb::BnbConfig cfg;
  cfg.time_limit_s = config.time_limit_s;
  cfg.node_limit = config.node_limit;
  cfg.user_cut_frequency = config.cut_frequency;
  return cfg;
}

dcglp::DcglpConfig DcglpSettings(const RunConfig& config) {
  dcglp::DcglpConfig cfg;
  cfg.p = config.p;
  cfg.gap = config.dcglp_gap;
  cfg.stall_limit = config.stall_limit;
  return cfg;
}

void FillFromBnb(RunReport& report, const bnb::BnbResult& res) {
  report.status = bnb::ToString(res.status);
  report.objective = res.objective;
  report.lower_bound = res.lower_bound;
  report.node_count = res.node_count;
  report.trajectory = NormalizeTrajectory(res.trajectory);
}

}  // namespace

std::string ToString(Method method) {
  switch (method) {
    case Method::kExt:
      return "ext";
    case Method::kCbd:
      return "cbd";
    case Method::kDbd:
      return "dbd";
    case Method::kDbdSeq:
      return "dbd-seq";
  }
  return "unknown";
}

Method ParseMethod(const std::string& name) {
  if (name == "ext") return Method::kExt;
  if (name == "cbd") return Method::kCbd;
  if (name == "dbd") return Method::kDbd;
  if (name == "dbd-seq") return Method::kDbdSeq;
  throw UsageError("unknown method: " + name);
}

void RunConfig::Validate() const {
  if (!(p == 1.0 || (std::isinf(p) && p > 0))) {
    throw UsageError("p must be 1 or inf");
  }
  if (!(dcglp_gap >= 0.0)) throw UsageError("dcglp gap must be nonnegative");
  if (stall_limit <= 0) throw UsageError("stall limit must be positive");
  if (cut_frequency <= 0) throw UsageError("cut frequency must be positive");
  if (!(keep_top > 0.0 && keep_top <= 1.0)) {
    throw UsageError("keep-top must lie in (0, 1]");
  }
  if (!(time_limit_s > 0.0)) throw UsageError("time limit must be positive");
  if (node_limit <= 0) throw UsageError("node limit must be positive");
}

void ApplyProfile(RunConfig& config, const std::string& profile) {
  if (profile == "default") return;
  if (profile == "uflp") {
    config.keep_top = 0.05;
  } else if (profile == "snip") {
    config.reuse_relaxation = true;
    config.lift = true;
  } else {
    throw UsageError("unknown profile: " + profile);
  }
}

nlohmann::json ConfigToJson(const RunConfig& config) {
  nlohmann::json j;
  j["method"] = ToString(config.method);
  j["p"] = std::isinf(config.p) ? nlohmann::json("inf") : nlohmann::json(config.p);
  j["dcglp_gap"] = config.dcglp_gap;
  j["stall_limit"] = config.stall_limit;
  j["cut_frequency"] = config.cut_frequency;
  j["keep_top"] = config.keep_top;
  j["reuse_relaxation"] = config.reuse_relaxation;
  j["lift"] = config.lift;
  j["time_limit_s"] = Real(config.time_limit_s);
  j["node_limit"] = config.node_limit;
  j["seed"] = config.seed;
  j["split_rule"] = mbp::ToString(config.split_rule);
  return j;
}

std::unique_ptr<benders::TypicalOracle> MakeOracle(const BlockMilp& milp,
                                                   const nlohmann::json& meta) {
  if (meta.is_object() && meta.contains("transport")) {
    const auto& rows = meta.at("transport");
    const int fac = static_cast<int>(rows.size());
    const int cust = fac > 0 ? static_cast<int>(rows.at(0).size()) : 0;
    Eigen::MatrixXd transport(fac, cust);
    for (int i = 0; i < fac; ++i) {
      for (int j = 0; j < cust; ++j) transport(i, j) = rows.at(i).at(j).get<double>();
    }
    if (fac == milp.n_x()) {
      return std::make_unique<benders::UflpKnapsackOracle>(transport);
    }
  }
  return std::make_unique<benders::ClassicalOracle>(milp,
                                                    !milp.scenarios.empty());
}

RunReport Run(const BlockMilp& milp, const RunConfig& config,
              const std::string& instance_id, benders::TypicalOracle* oracle) {
  config.Validate();
  std::unique_ptr<benders::TypicalOracle> owned;
  if (oracle == nullptr && config.method != Method::kExt) {
    owned = MakeOracle(milp, nlohmann::json::object());
    oracle = owned.get();
  }

  RunReport report;
  report.instance_id = instance_id;
  report.method = config.method;
  const auto start = Clock::now();
  switch (config.method) {
    case Method::kExt: {
      const benders::ExtResult res =
          benders::SolveExtensive(milp, BnbSettings(config));
      FillFromBnb(report, res.bnb);
      report.x = res.x;
      break;
    }
    case Method::kCbd:
    case Method::kDbd: {
      benders::BendersBnbConfig cfg;
      cfg.bnb = BnbSettings(config);
      std::unique_ptr<mbp::DbdCallback> dbd;
      benders::MasterUserCallback user;
      if (config.method == Method::kDbd) {
        mbp::DbdConfig dc;
        dc.dcglp = DcglpSettings(config);
        dc.split_rule = config.split_rule;
        dc.keep_top = config.keep_top;
        dc.reuse_relaxation = config.reuse_relaxation;
        dc.lift = config.lift;
        dbd = std::make_unique<mbp::DbdCallback>(milp, *oracle, dc);
        user = dbd->AsUserCallback();
      }
      const benders::BendersBnbResult res =
          benders::BendersBnb(milp, *oracle, user, cfg);
      FillFromBnb(report, res.bnb);
      report.x = res.x;
      report.cuts.optimality = res.optimality_cuts;
      report.cuts.feasibility = res.feasibility_cuts;
      report.cuts.disjunctive = res.disjunctive_cuts;
      break;
    }
    case Method::kDbdSeq: {
      mbp::SpecializedConfig cfg;
      cfg.dcglp.p = config.p;
      try {
        const mbp::SpecializedResult res =
            mbp::SpecializedBendersSeq(milp, *oracle, cfg);
        report.status = "Optimal";
        report.objective = res.objective;
        report.lower_bound = res.objective;
        report.node_count = res.lp_master_solves;
        report.x = res.x;
        for (const benders::Cut& cut : res.cuts) {
          switch (cut.kind) {
            case benders::CutKind::kOptimality:
              ++report.cuts.optimality;
              break;
            case benders::CutKind::kFeasibility:
              ++report.cuts.feasibility;
              break;
            case benders::CutKind::kDisjunctive:
              ++report.cuts.disjunctive;
              break;
          }
        }
        // One row per LP master solve.
        std::vector<bnb::TrajectoryPoint> rows;
        for (size_t k = 0; k < res.lower_bounds.size(); ++k) {
          bnb::TrajectoryPoint pt;
          pt.node_count = static_cast<long>(k) + 1;
          pt.lower_bound = res.lower_bounds[k];
          pt.upper_bound = k + 1 == res.lower_bounds.size() ? res.objective : kInf;
          rows.push_back(pt);
        }
        report.trajectory = NormalizeTrajectory(rows);
      } catch (const Infeasible&) {
        report.status = "Infeasible";
      } catch (const IterLimit&) {
        report.status = "IterLimit";
      }
      break;
    }
  }
  report.wall_time_s = Seconds(start);
  return report;
}

nlohmann::json ReportToJson(const RunReport& report, const RunConfig& config) {
  nlohmann::json j;
  j["instance"] = report.instance_id;
  j["method"] = ToString(report.method);
  j["status"] = report.status;
  j["objective"] = Real(report.objective);
  j["lower_bound"] = Real(report.lower_bound);
  j["node_count"] = report.node_count;
  j["wall_time_s"] = report.wall_time_s;
  j["cuts"] = {{"optimality", report.cuts.optimality},
               {"feasibility", report.cuts.feasibility},
               {"disjunctive", report.cuts.disjunctive}};
  nlohmann::json traj = nlohmann::json::array();
  for (const bnb::TrajectoryPoint& pt : report.trajectory) {
    traj.push_back({{"node_count", pt.node_count},
                    {"lower_bound", Real(pt.lower_bound)},
                    {"upper_bound", Real(pt.upper_bound)},
                    {"time_s", pt.time_s}});
  }
  j["trajectory"] = traj;
  j["x"] = std::vector<double>(report.x.data(), report.x.data() + report.x.size());
  j["config"] = ConfigToJson(config);
  return j;
}

RunReport ReportFromJson(const nlohmann::json& j) {
  RunReport r;
  try {
    r.instance_id = j.at("instance").get<std::string>();
    r.method = ParseMethod(j.at("method").get<std::string>());
    r.status = j.at("status").get<std::string>();
    r.objective = RealOr(j, "objective", kInf);
    r.lower_bound = RealOr(j, "lower_bound", -kInf);
    r.node_count = j.at("node_count").get<long>();
    r.wall_time_s = j.at("wall_time_s").get<double>();
    const auto& cuts = j.at("cuts");
    r.cuts.optimality = cuts.at("optimality").get<long>();
    r.cuts.feasibility = cuts.at("feasibility").get<long>();
    r.cuts.disjunctive = cuts.at("disjunctive").get<long>();
    for (const auto& row : j.at("trajectory")) {
      bnb::TrajectoryPoint pt;
      pt.node_count = row.at("node_count").get<long>();
      pt.lower_bound = RealOr(row, "lower_bound", -kInf);
      pt.upper_bound = RealOr(row, "upper_bound", kInf);
      pt.time_s = row.at("time_s").get<double>();
      r.trajectory.push_back(pt);
    }
    const auto x = j.at("x").get<std::vector<double>>();
    r.x = Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<long>(x.size()));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed report: ") + e.what());
  }
  return r;
}

std::vector<bnb::TrajectoryPoint> NormalizeTrajectory(
    const std::vector<bnb::TrajectoryPoint>& rows) {
  std::vector<bnb::TrajectoryPoint> out;
  for (const bnb::TrajectoryPoint& pt : rows) {
    if (!out.empty() && pt.node_count <= out.back().node_count) {
      const bnb::TrajectoryPoint prev = out.back();
      out.back() = pt;
      out.back().node_count = prev.node_count;
      out.back().lower_bound = std::max(prev.lower_bound, pt.lower_bound);
    } else {
      out.push_back(pt);
    }
    if (out.size() > 1) {
      out.back().lower_bound =
          std::max(out.back().lower_bound, out[out.size() - 2].lower_bound);
    }
  }
  return out;
}

std::string TrajectoryCsv(const std::vector<bnb::TrajectoryPoint>& rows) {
  std::ostringstream os;
  os << kTrajectoryHeader << '\n';
  for (const bnb::TrajectoryPoint& pt : rows) {
    os << pt.node_count << ',' << Csv(pt.lower_bound) << ','
       << Csv(pt.upper_bound) << ',' << Csv(pt.time_s) << '\n';
  }
  return os.str();
}

std::string CompareCsv(const std::vector<RunReport>& reports) {
  std::ostringstream os;
  os << kCompareHeader << '\n';
  for (const RunReport& r : reports) {
    os << ToString(r.method) << ',' << r.status << ',' << Csv(r.objective)
       << ',' << Csv(r.lower_bound) << ',' << r.node_count << ','
       << Csv(r.wall_time_s) << ',' << r.cuts.optimality << ','
       << r.cuts.feasibility << ',' << r.cuts.disjunctive << '\n';
  }
  return os.str();
}

bool SameObjective(double a, double b, double tol) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= tol * (1.0 + std::abs(b));
}

}  // namespace bdx::harness
