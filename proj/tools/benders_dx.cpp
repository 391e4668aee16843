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

// benders-dx: solve, gen, verify and compare.
//
// Exit codes: 0 on success, 1 on usage errors, 2 when a solver fails or
// results disagree.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "bdx/common/errors.hpp"
#include "bdx/harness/harness.hpp"
#include "bdx/problems/brute_force.hpp"
#include "bdx/problems/generators.hpp"
#include "bdx/problems/instance_io.hpp"

namespace {

namespace hr = bdx::harness;
namespace pr = bdx::problems;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kFailure = 2;

void ConfigureLogging() {
  spdlog::set_default_logger(spdlog::default_logger()->clone("benders-dx"));
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  const char* env = std::getenv("BENDERS_DX_LOG");
  if (env == nullptr) return;
  const std::string level = env;
  if (level == "error" || level == "info" || level == "debug" ||
      level == "trace") {
    spdlog::set_level(spdlog::level::from_str(level));
  } else {
    spdlog::warn("ignoring BENDERS_DX_LOG={}", level);
  }
}

// Flags shared by solve and compare.
struct ConfigFlags {
  std::string profile = "default";
  std::string p = "inf";
  std::string split_rule = "most-fractional";
  hr::RunConfig cfg;
  // Explicit flags override the profile, so they are recorded separately.
  double keep_top = 0.0;
  bool reuse = false;
  bool lift = false;

  void Register(CLI::App* app) {
    app->add_option("--profile", profile, "default, uflp or snip")
        ->capture_default_str();
    app->add_option("--p", p, "DCGLP norm: 1 or inf")->capture_default_str();
    app->add_option("--dcglp-gap", cfg.dcglp_gap, "DCGLP relative gap")
        ->capture_default_str();
    app->add_option("--stall-limit", cfg.stall_limit,
                    "DCGLP iterations without lower bound progress")
        ->capture_default_str();
    app->add_option("--cut-frequency", cfg.cut_frequency,
                    "disjunctive cuts every this many fractional nodes")
        ->capture_default_str();
    app->add_option("--keep-top", keep_top,
                    "fraction of byproduct cuts kept, in (0, 1]");
    app->add_flag("--reuse-relaxation", reuse,
                  "seed DCGLP with previously generated byproduct cuts");
    app->add_flag("--lift", lift, "use the approximate lifted oracle");
    app->add_option("--time-limit", cfg.time_limit_s, "seconds");
    app->add_option("--node-limit", cfg.node_limit, "branch-and-bound nodes");
    app->add_option("--seed", cfg.seed, "recorded in the report")
        ->capture_default_str();
    app->add_option("--split-rule", split_rule,
                    "most-fractional or largest-index")
        ->capture_default_str();
  }

  hr::RunConfig Build(hr::Method method) const {
    hr::RunConfig out = cfg;
    out.method = method;
    hr::ApplyProfile(out, profile);
    if (keep_top != 0.0) out.keep_top = keep_top;
    if (reuse) out.reuse_relaxation = true;
    if (lift) out.lift = true;
    if (p == "1") {
      out.p = 1.0;
    } else if (p == "inf") {
      out.p = bdx::kInf;
    } else {
      throw bdx::UsageError("--p must be 1 or inf");
    }
    out.split_rule = bdx::mbp::ParseSplitRule(split_rule);
    out.Validate();
    return out;
  }
};

struct LoadedInstance {
  bdx::benders::BlockMilp milp;
  json meta;
  std::string id;
};

LoadedInstance Load(const std::string& path) {
  LoadedInstance in;
  const json j = pr::ReadJsonFile(path);
  in.milp = pr::MilpFromJson(j);
  in.meta = j.value("meta", json::object());
  in.id = in.meta.value("name", std::filesystem::path(path).stem().string());
  return in;
}

void WriteText(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(path);
  if (!os) throw bdx::UsageError("cannot write " + path);
  os << text;
}

hr::RunReport RunOne(const LoadedInstance& in, const hr::RunConfig& cfg) {
  std::unique_ptr<bdx::benders::TypicalOracle> oracle;
  if (cfg.method != hr::Method::kExt) oracle = hr::MakeOracle(in.milp, in.meta);
  spdlog::info("{}: running {}", in.id, hr::ToString(cfg.method));
  hr::RunReport r = hr::Run(in.milp, cfg, in.id, oracle.get());
  spdlog::info("{}: {} objective {} nodes {} in {:.3f}s", in.id, r.status,
               r.objective, r.node_count, r.wall_time_s);
  return r;
}

// Limits are requested outcomes; anything else that is not optimal is a
// solver failure.
bool Succeeded(const hr::RunReport& r) {
  return r.optimal() || r.status == "TimeLimit" || r.status == "NodeLimit";
}

struct SolveArgs {
  std::string instance;
  std::string method = "dbd";
  std::string report;
  std::string trajectory;
  ConfigFlags flags;
};

int Solve(const SolveArgs& a) {
  const hr::RunConfig cfg = a.flags.Build(hr::ParseMethod(a.method));
  const LoadedInstance in = Load(a.instance);
  const hr::RunReport r = RunOne(in, cfg);
  WriteText(a.report, pr::DumpJson(hr::ReportToJson(r, cfg)) + "\n");
  if (!a.trajectory.empty()) WriteText(a.trajectory, hr::TrajectoryCsv(r.trajectory));
  return Succeeded(r) ? kOk : kFailure;
}

struct GenArgs {
  std::string problem;
  std::string out;
  std::uint64_t seed = 1;
  int facilities = 10;
  int customers = 10;
  std::string cost_class = "b";
  pr::SnipParams snip;
  pr::RandomMilpParams random;
};

int Gen(GenArgs a) {
  json meta = {{"generator", a.problem}, {"seed", a.seed}};
  bdx::benders::BlockMilp milp;
  if (a.problem == "uflp") {
    if (a.cost_class.size() != 1) throw bdx::UsageError("--class must be a, b or c");
    const auto [inst, m] = pr::GenUflp(a.facilities, a.customers, a.seed,
                                       pr::ParseCostClass(a.cost_class[0]));
    milp = m;
    json transport = json::array();
    for (int i = 0; i < inst.facilities; ++i) {
      std::vector<double> row;
      for (int j = 0; j < inst.customers; ++j) row.push_back(inst.transport(i, j));
      transport.push_back(row);
    }
    meta["name"] = "uflp-" + std::to_string(a.facilities) + "x" +
                   std::to_string(a.customers) + "-" + a.cost_class + "-" +
                   std::to_string(a.seed);
    meta["fixed"] = std::vector<double>(inst.fixed.data(),
                                        inst.fixed.data() + inst.fixed.size());
    meta["transport"] = transport;
  } else if (a.problem == "snip") {
    a.snip.seed = a.seed;
    const auto [inst, m] = pr::GenSnip(a.snip);
    milp = m;
    meta["name"] = "snip-" + std::to_string(a.snip.nodes) + "-" +
                   std::to_string(a.seed);
    json arcs = json::array();
    for (const pr::SnipArc& arc : inst.arcs) {
      arcs.push_back({{"from", arc.from}, {"to", arc.to}, {"r", arc.r},
                      {"q", arc.q}, {"sensor_eligible", arc.sensor_eligible}});
    }
    meta["arcs"] = arcs;
    meta["budget"] = inst.budget;
  } else if (a.problem == "random") {
    a.random.seed = a.seed;
    milp = pr::RandomMixedBinary(a.random);
    meta["name"] = "random-" + std::to_string(a.seed);
  } else if (a.problem == "analog") {
    milp = pr::BuildMotivatingAnalog(a.seed);
    meta["name"] = "analog-" + std::to_string(a.seed);
  } else {
    throw bdx::UsageError("unknown problem: " + a.problem);
  }
  WriteText(a.out, pr::DumpJson(pr::MilpToJson(milp, meta)) + "\n");
  return kOk;
}

struct VerifyArgs {
  std::string instance;
  std::string report;
  double tol = 1e-6;
};

int Verify(const VerifyArgs& a) {
  const LoadedInstance in = Load(a.instance);
  const hr::RunReport r = hr::ReportFromJson(pr::ReadJsonFile(a.report));
  const pr::BruteForceResult bf = pr::BruteForceSolve(in.milp);
  const bool infeasible = std::isinf(bf.objective);
  const bool pass = infeasible ? r.status == "Infeasible"
                               : r.optimal() && hr::SameObjective(r.objective,
                                                                  bf.objective,
                                                                  a.tol);
  std::cout << (pass ? "PASS" : "FAIL") << " " << in.id << " "
            << hr::ToString(r.method) << " status=" << r.status
            << " objective=" << r.objective << " reference=" << bf.objective
            << "\n";
  return pass ? kOk : kFailure;
}

struct CompareArgs {
  std::string instance;
  std::string out;
  ConfigFlags flags;
};

int Compare(const CompareArgs& a) {
  const LoadedInstance in = Load(a.instance);
  std::vector<hr::RunReport> reports;
  for (hr::Method m : {hr::Method::kExt, hr::Method::kCbd, hr::Method::kDbd}) {
    reports.push_back(RunOne(in, a.flags.Build(m)));
  }
  WriteText(a.out, hr::CompareCsv(reports));
  bool ok = true;
  for (const hr::RunReport& r : reports) {
    ok = ok && r.optimal() &&
         hr::SameObjective(r.objective, reports.front().objective);
  }
  if (!ok) spdlog::error("{}: methods disagree or did not finish", in.id);
  return ok ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  ConfigureLogging();
  CLI::App app{"Disjunctive Benders decomposition solver", "benders-dx"};
  app.require_subcommand(1);

  SolveArgs solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "run one method on an instance");
  solve_cmd->add_option("instance", solve.instance, "instance JSON")->required();
  solve_cmd->add_option("--method", solve.method, "ext, cbd, dbd or dbd-seq")
      ->capture_default_str();
  solve_cmd->add_option("--report", solve.report, "report JSON path (stdout if unset)");
  solve_cmd->add_option("--trajectory", solve.trajectory, "trajectory CSV path");
  solve.flags.Register(solve_cmd);

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "write a generated instance");
  gen_cmd->add_option("--problem", gen.problem, "uflp, snip, random or analog")
      ->required();
  gen_cmd->add_option("--out", gen.out, "instance JSON path (stdout if unset)");
  gen_cmd->add_option("--seed", gen.seed)->capture_default_str();
  gen_cmd->add_option("--facilities", gen.facilities)->capture_default_str();
  gen_cmd->add_option("--customers", gen.customers)->capture_default_str();
  gen_cmd->add_option("--class", gen.cost_class, "uflp cost class a, b or c")
      ->capture_default_str();
  gen_cmd->add_option("--nodes", gen.snip.nodes)->capture_default_str();
  gen_cmd->add_option("--arc-density", gen.snip.arc_density)->capture_default_str();
  gen_cmd->add_option("--sensors", gen.snip.sensors)->capture_default_str();
  gen_cmd->add_option("--scenarios", gen.snip.scenarios)->capture_default_str();
  gen_cmd->add_option("--budget", gen.snip.budget)->capture_default_str();
  gen_cmd->add_option("--q-ratio", gen.snip.q_ratio)->capture_default_str();
  gen_cmd->add_option("--nx", gen.random.n_x)->capture_default_str();
  gen_cmd->add_option("--ny", gen.random.n_y)->capture_default_str();
  gen_cmd->add_option("--rows", gen.random.m)->capture_default_str();
  gen_cmd->add_option("--blocks", gen.random.blocks)->capture_default_str();
  gen_cmd->add_flag("--cover-row", gen.random.cover_row);

  VerifyArgs verify;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "check a report against brute force");
  verify_cmd->add_option("instance", verify.instance, "instance JSON")->required();
  verify_cmd->add_option("report", verify.report, "report JSON")->required();
  verify_cmd->add_option("--tol", verify.tol)->capture_default_str();

  CompareArgs compare;
  CLI::App* compare_cmd =
      app.add_subcommand("compare", "run ext, cbd and dbd on one instance");
  compare_cmd->add_option("instance", compare.instance, "instance JSON")->required();
  compare_cmd->add_option("--out", compare.out, "CSV path (stdout if unset)");
  compare.flags.Register(compare_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    std::cerr << sub->help();
    return kUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    if (sub == solve_cmd) return Solve(solve);
    if (sub == gen_cmd) return Gen(gen);
    if (sub == verify_cmd) return Verify(verify);
    return Compare(compare);
  } catch (const bdx::InstanceShape& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const bdx::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n" << sub->help();
    return kUsage;
  } catch (const bdx::Error& e) {
    spdlog::error("{}", e.what());
    return kFailure;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kFailure;
  }
}
