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

#include "bdx/problems/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "bdx/problems/brute_force.hpp"

namespace bdx::problems {

namespace {

using Rng = std::mt19937_64;

double Uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int UniformInt(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Appends a row a^T x + b^T y >= rhs to the growing matrices.
struct RowBuilder {
  std::vector<Eigen::VectorXd> a_rows;
  std::vector<Eigen::VectorXd> b_rows;
  std::vector<double> rhs;

  int Add(Eigen::VectorXd a, Eigen::VectorXd b, double r) {
    a_rows.push_back(std::move(a));
    b_rows.push_back(std::move(b));
    rhs.push_back(r);
    return static_cast<int>(rhs.size()) - 1;
  }

  void Fill(BlockMilp& milp, int n_x, int n_y) const {
    const int m = static_cast<int>(rhs.size());
    milp.A.resize(m, n_x);
    milp.B.resize(m, n_y);
    milp.b.resize(m);
    for (int i = 0; i < m; ++i) {
      milp.A.row(i) = a_rows[i];
      milp.B.row(i) = b_rows[i];
      milp.b[i] = rhs[i];
    }
  }
};

}  // namespace

CostClass ParseCostClass(char c) {
  switch (c) {
    case 'a':
      return CostClass::kA;
    case 'b':
      return CostClass::kB;
    case 'c':
      return CostClass::kC;
    default:
      throw BadShape(std::string("unknown cost class '") + c + "'");
  }
}

char ToChar(CostClass c) {
  switch (c) {
    case CostClass::kA:
      return 'a';
    case CostClass::kB:
      return 'b';
    case CostClass::kC:
      return 'c';
  }
  return '?';
}

BlockMilp UflpToMilp(const UflpInstance& inst) {
  const int fac = inst.facilities;
  const int cus = inst.customers;
  if (fac < 2 || cus < 2) throw BadShape("UFLP needs I, J >= 2");
  if (inst.fixed.size() != fac || inst.transport.rows() != fac ||
      inst.transport.cols() != cus) {
    throw BadShape("UFLP cost dimensions");
  }
  BlockMilp milp;
  milp.name = "uflp";
  const int ny = fac * cus;
  milp.c = inst.fixed;
  milp.d.resize(ny);
  RowBuilder rows;
  for (int j = 0; j < cus; ++j) {
    benders::Scenario sc;
    auto col = [&](int i) { return j * fac + i; };
    for (int i = 0; i < fac; ++i) {
      milp.d[col(i)] = inst.transport(i, j);
      sc.y_cols.push_back(col(i));
    }
    Eigen::VectorXd demand = Eigen::VectorXd::Zero(ny);
    for (int i = 0; i < fac; ++i) demand[col(i)] = 1.0;
    sc.rows.push_back(rows.Add(Eigen::VectorXd::Zero(fac), demand, 1.0));
    sc.rows.push_back(rows.Add(Eigen::VectorXd::Zero(fac), -demand, -1.0));
    for (int i = 0; i < fac; ++i) {
      Eigen::VectorXd a = Eigen::VectorXd::Zero(fac);
      Eigen::VectorXd b = Eigen::VectorXd::Zero(ny);
      a[i] = 1.0;
      b[col(i)] = -1.0;
      sc.rows.push_back(rows.Add(a, b, 0.0));
    }
    for (int i = 0; i < fac; ++i) {
      Eigen::VectorXd b = Eigen::VectorXd::Zero(ny);
      b[col(i)] = 1.0;
      sc.rows.push_back(rows.Add(Eigen::VectorXd::Zero(fac), b, 0.0));
    }
    milp.scenarios.push_back(std::move(sc));
  }
  rows.Fill(milp, fac, ny);
  milp.D = Eigen::MatrixXd::Ones(1, fac);
  milp.h = Eigen::VectorXd::Constant(1, 2.0);
  milp.l = Eigen::VectorXd::Zero(fac);
  milp.u = Eigen::VectorXd::Ones(fac);
  milp.integer_indices.resize(fac);
  std::iota(milp.integer_indices.begin(), milp.integer_indices.end(), 0);
  milp.Validate();
  return milp;
}

std::pair<UflpInstance, BlockMilp> GenUflp(int facilities, int customers,
                                           std::uint64_t seed,
                                           CostClass cost_class) {
  if (facilities < 2 || customers < 2) throw BadShape("UFLP needs I, J >= 2");
  Rng rng(seed);
  UflpInstance inst;
  inst.facilities = facilities;
  inst.customers = customers;
  inst.cost_class = cost_class;
  const double scale = cost_class == CostClass::kA   ? 0.1
                       : cost_class == CostClass::kB ? 1.0
                                                     : 10.0;
  inst.fixed.resize(facilities);
  for (int i = 0; i < facilities; ++i) {
    inst.fixed[i] = scale * std::round(Uniform(rng, 1000.0, 2000.0));
  }
  inst.transport.resize(facilities, customers);
  for (int i = 0; i < facilities; ++i) {
    for (int j = 0; j < customers; ++j) {
      inst.transport(i, j) = std::round(Uniform(rng, 1000.0, 2000.0));
    }
  }
  BlockMilp milp = UflpToMilp(inst);
  milp.name = "uflp-" + std::to_string(facilities) + "x" +
              std::to_string(customers) + "-" + ToChar(cost_class) + "-" +
              std::to_string(seed);
  return {std::move(inst), std::move(milp)};
}

std::vector<int> SnipInstance::SensorArcs() const {
  std::vector<int> idx;
  for (size_t a = 0; a < arcs.size(); ++a) {
    if (arcs[a].sensor_eligible) idx.push_back(static_cast<int>(a));
  }
  return idx;
}

namespace {

// Most reliable path values to `dest` with per-arc evasion probabilities
// `prob`. Probabilities are at most 1, so simple paths suffice and |N|
// rounds of relaxation converge.
std::vector<double> MaxReliability(int nodes, const std::vector<SnipArc>& arcs,
                                   const std::vector<double>& prob, int dest) {
  std::vector<double> val(nodes, 0.0);
  val[dest] = 1.0;
  for (int round = 0; round < nodes; ++round) {
    bool changed = false;
    for (size_t a = 0; a < arcs.size(); ++a) {
      const double cand = prob[a] * val[arcs[a].to];
      if (arcs[a].from != dest && cand > val[arcs[a].from]) {
        val[arcs[a].from] = cand;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return val;
}

bool Reaches(int nodes, const std::vector<SnipArc>& arcs, int from, int to) {
  std::vector<char> seen(nodes, 0);
  std::vector<int> stack{from};
  seen[from] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    if (v == to) return true;
    for (const SnipArc& arc : arcs) {
      if (arc.from == v && !seen[arc.to]) {
        seen[arc.to] = 1;
        stack.push_back(arc.to);
      }
    }
  }
  return false;
}

}  // namespace

void ComputePsi(SnipInstance& inst) {
  std::vector<double> r;
  for (const SnipArc& arc : inst.arcs) r.push_back(arc.r);
  inst.psi.clear();
  for (const SnipScenario& sc : inst.scenarios) {
    if (!Reaches(inst.nodes, inst.arcs, sc.origin, sc.destination)) {
      throw Disconnected("no path from " + std::to_string(sc.origin) +
                         " to " + std::to_string(sc.destination));
    }
    inst.psi.push_back(MaxReliability(inst.nodes, inst.arcs, r, sc.destination));
  }
}

BlockMilp SnipToMilp(const SnipInstance& inst) {
  const std::vector<int> sensors = inst.SensorArcs();
  const int nx = static_cast<int>(sensors.size());
  const int nodes = inst.nodes;
  const int scen = static_cast<int>(inst.scenarios.size());
  if (nx < 1 || scen < 1 || nodes < 2) throw BadShape("empty SNIP instance");
  if (static_cast<int>(inst.psi.size()) != scen) {
    throw BadShape("psi not computed");
  }
  std::vector<int> sensor_of(inst.arcs.size(), -1);
  for (int s = 0; s < nx; ++s) sensor_of[sensors[s]] = s;

  BlockMilp milp;
  milp.name = "snip";
  const int ny = nodes * scen;
  milp.c = Eigen::VectorXd::Zero(nx);
  milp.d = Eigen::VectorXd::Zero(ny);
  RowBuilder rows;
  for (int k = 0; k < scen; ++k) {
    const SnipScenario& sc = inst.scenarios[k];
    benders::Scenario part;
    auto col = [&](int v) { return k * nodes + v; };
    for (int v = 0; v < nodes; ++v) part.y_cols.push_back(col(v));
    milp.d[col(sc.origin)] = sc.probability;
    const Eigen::VectorXd zx = Eigen::VectorXd::Zero(nx);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(ny);
    e[col(sc.destination)] = 1.0;
    part.rows.push_back(rows.Add(zx, e, 1.0));
    part.rows.push_back(rows.Add(zx, -e, -1.0));
    for (size_t a = 0; a < inst.arcs.size(); ++a) {
      const SnipArc& arc = inst.arcs[a];
      Eigen::VectorXd b = Eigen::VectorXd::Zero(ny);
      b[col(arc.from)] += 1.0;
      b[col(arc.to)] -= arc.r;
      Eigen::VectorXd ax = zx;
      if (sensor_of[a] >= 0) {
        ax[sensor_of[a]] = (arc.r - arc.q) * inst.psi[k][arc.to];
      }
      part.rows.push_back(rows.Add(ax, b, 0.0));
      if (sensor_of[a] >= 0) {
        Eigen::VectorXd bq = Eigen::VectorXd::Zero(ny);
        bq[col(arc.from)] += 1.0;
        bq[col(arc.to)] -= arc.q;
        part.rows.push_back(rows.Add(zx, bq, 0.0));
      }
    }
    for (int v = 0; v < nodes; ++v) {
      Eigen::VectorXd b = Eigen::VectorXd::Zero(ny);
      b[col(v)] = 1.0;
      part.rows.push_back(rows.Add(zx, b, 0.0));
    }
    milp.scenarios.push_back(std::move(part));
  }
  rows.Fill(milp, nx, ny);
  milp.D = -Eigen::MatrixXd::Ones(1, nx);
  milp.h = Eigen::VectorXd::Constant(1, -inst.budget);
  milp.l = Eigen::VectorXd::Zero(nx);
  milp.u = Eigen::VectorXd::Ones(nx);
  milp.integer_indices.resize(nx);
  std::iota(milp.integer_indices.begin(), milp.integer_indices.end(), 0);
  milp.Validate();
  return milp;
}

std::pair<SnipInstance, BlockMilp> GenSnip(const SnipParams& params) {
  if (params.nodes < 4 || params.sensors < 1 || params.scenarios < 1) {
    throw BadShape("SNIP needs >= 4 nodes, >= 1 sensor and >= 1 scenario");
  }
  Rng rng(params.seed);
  SnipInstance inst;
  inst.nodes = params.nodes;
  inst.budget = params.budget;
  const int width = std::max(2, static_cast<int>(std::round(std::sqrt(params.nodes))));
  std::vector<int> layer(params.nodes);
  for (int v = 0; v < params.nodes; ++v) layer[v] = v / width;
  const int last = layer.back();
  auto add_arc = [&](int from, int to) {
    for (const SnipArc& arc : inst.arcs) {
      if (arc.from == from && arc.to == to) return;
    }
    SnipArc arc;
    arc.from = from;
    arc.to = to;
    arc.r = std::round(Uniform(rng, 0.5, 1.0) * 1000.0) / 1000.0;
    arc.q = params.q_ratio * arc.r;
    inst.arcs.push_back(arc);
  };
  for (int v = 0; v < params.nodes; ++v) {
    if (layer[v] == last) continue;
    std::vector<int> next;
    for (int w = 0; w < params.nodes; ++w) {
      if (layer[w] == layer[v] + 1) next.push_back(w);
    }
    bool any = false;
    for (int w : next) {
      if (Uniform(rng, 0.0, 1.0) < params.arc_density) {
        add_arc(v, w);
        any = true;
      }
    }
    if (!any) add_arc(v, next[UniformInt(rng, 0, static_cast<int>(next.size()) - 1)]);
  }
  // Every non-source node gets an incoming arc.
  for (int w = 0; w < params.nodes; ++w) {
    if (layer[w] == 0) continue;
    bool has_in = false;
    for (const SnipArc& arc : inst.arcs) has_in |= arc.to == w;
    if (has_in) continue;
    std::vector<int> prev;
    for (int v = 0; v < params.nodes; ++v) {
      if (layer[v] == layer[w] - 1) prev.push_back(v);
    }
    add_arc(prev[UniformInt(rng, 0, static_cast<int>(prev.size()) - 1)], w);
  }
  std::vector<int> order(inst.arcs.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  const int eligible = std::min<int>(params.sensors, static_cast<int>(order.size()));
  for (int s = 0; s < eligible; ++s) inst.arcs[order[s]].sensor_eligible = true;

  // Origins in the first layer, destinations in the last one.
  std::vector<int> sources, sinks;
  for (int v = 0; v < params.nodes; ++v) {
    if (layer[v] == 0) sources.push_back(v);
    if (layer[v] == last) sinks.push_back(v);
  }
  double total = 0.0;
  for (int k = 0; k < params.scenarios; ++k) {
    SnipScenario sc;
    bool found = false;
    for (int attempt = 0; attempt < 100 && !found; ++attempt) {
      sc.origin = sources[UniformInt(rng, 0, static_cast<int>(sources.size()) - 1)];
      sc.destination = sinks[UniformInt(rng, 0, static_cast<int>(sinks.size()) - 1)];
      found = Reaches(inst.nodes, inst.arcs, sc.origin, sc.destination);
    }
    if (!found) throw Disconnected("no connected origin/destination pair");
    sc.probability = Uniform(rng, 0.5, 1.5);
    total += sc.probability;
    inst.scenarios.push_back(sc);
  }
  for (SnipScenario& sc : inst.scenarios) sc.probability /= total;
  ComputePsi(inst);
  BlockMilp milp = SnipToMilp(inst);
  milp.name = "snip-" + std::to_string(params.nodes) + "-" +
              std::to_string(params.seed);
  return {std::move(inst), std::move(milp)};
}

double SnipValue(const SnipInstance& inst, const std::vector<double>& x) {
  const std::vector<int> sensors = inst.SensorArcs();
  std::vector<double> prob;
  for (const SnipArc& arc : inst.arcs) prob.push_back(arc.r);
  for (size_t s = 0; s < sensors.size(); ++s) {
    if (x[s] > 0.5) prob[sensors[s]] = inst.arcs[sensors[s]].q;
  }
  double value = 0.0;
  for (const SnipScenario& sc : inst.scenarios) {
    value += sc.probability *
             MaxReliability(inst.nodes, inst.arcs, prob, sc.destination)[sc.origin];
  }
  return value;
}

BlockMilp BuildMotivatingAnalog(std::uint64_t seed) {
  Rng rng(seed);
  constexpr double kTipX = 47.2;
  constexpr double kTipY = 0.5;
  constexpr int kPerChain = 12;
  // Row weight growth along a chain. The classical oracle returns the row
  // with the largest raw violation, so heavier rows near the tip make it
  // pick the nearest half-plane first.
  constexpr double kWeightRatio = 2.2;
  BlockMilp milp;
  milp.name = "motivating-analog-" + std::to_string(seed);
  milp.c = Eigen::Vector2d(-2.0, -1.0);
  milp.d.resize(0);
  milp.l = Eigen::Vector2d(0.0, 0.0);
  milp.u = Eigen::Vector2d(50.0, 1.0);
  milp.integer_indices = {0, 1};
  std::vector<Eigen::Vector2d> normals;
  std::vector<double> rhs;
  // Each half-plane passes through the tip and crosses x2 = level at a
  // crossing point; the upper chain keeps points below, the lower chain
  // points above. The first crossing is at x1 = 0.
  for (int chain = 0; chain < 2; ++chain) {
    const double level = chain == 0 ? 1.0 : 0.0;
    for (int k = 0; k < kPerChain; ++k) {
      const double cross = 4.0 * k + Uniform(rng, -0.3, 0.3) * (k > 0);
      const double slope = (kTipY - level) / (kTipX - cross);
      const double scale =
          std::pow(kWeightRatio, k) / std::sqrt(slope * slope + 1.0);
      // Upper: x2 <= level + slope (x1 - cross), i.e. slope x1 - x2 >= ...
      Eigen::Vector2d a(slope * scale, -scale);
      double r = (slope * cross - level) * scale;
      if (chain == 1) {
        a = -a;
        r = -r;
      }
      normals.push_back(a);
      rhs.push_back(r);
    }
  }
  const int m = static_cast<int>(rhs.size());
  milp.A.resize(m, 2);
  milp.b.resize(m);
  for (int i = 0; i < m; ++i) {
    milp.A.row(i) = normals[i].transpose();
    milp.b[i] = rhs[i];
  }
  milp.B.resize(m, 0);
  milp.D.resize(0, 2);
  milp.h.resize(0);
  milp.Validate();

  const BruteForceResult bf = BruteForceSolve(milp);
  if (bf.feasible_points != 2 || std::abs(bf.objective + 1.0) > 1e-9 ||
      bf.x[0] != 0.0 || bf.x[1] != 1.0) {
    throw ConstructionFailed("analog has " + std::to_string(bf.feasible_points) +
                             " feasible points");
  }
  return milp;
}

BlockMilp RandomMixedBinary(const RandomMilpParams& params) {
  const int nx = params.n_x;
  const int ny = params.n_y;
  const int nb = std::max(1, std::min(params.blocks, ny));
  if (nx < 1 || ny < 1 || params.m < nb) {
    throw BadShape("random instance needs n_x, n_y >= 1 and m >= blocks");
  }
  Rng rng(params.seed);
  BlockMilp milp;
  milp.name = "random-" + std::to_string(params.seed);
  milp.c.resize(nx);
  for (int j = 0; j < nx; ++j) milp.c[j] = std::round(Uniform(rng, -6.0, 4.0) * 100) / 100;
  milp.l = Eigen::VectorXd::Zero(nx);
  milp.u = Eigen::VectorXd::Ones(nx);
  milp.integer_indices.resize(nx);
  std::iota(milp.integer_indices.begin(), milp.integer_indices.end(), 0);

  // Assign y columns and rows to blocks round-robin.
  std::vector<int> col_block(ny), row_block(params.m);
  for (int q = 0; q < ny; ++q) col_block[q] = q % nb;
  for (int i = 0; i < params.m; ++i) row_block[i] = i % nb;

  Eigen::VectorXd x0(nx);
  for (int j = 0; j < nx; ++j) x0[j] = static_cast<double>(UniformInt(rng, 0, 1));
  if (params.cover_row && x0.sum() < 1.0) x0[0] = 1.0;
  Eigen::VectorXd y0(ny);
  for (int q = 0; q < ny; ++q) y0[q] = Uniform(rng, 0.0, 2.0);

  milp.A = Eigen::MatrixXd::Zero(params.m, nx);
  milp.B = Eigen::MatrixXd::Zero(params.m, ny);
  milp.b.resize(params.m);
  auto coef = [&]() { return std::round(Uniform(rng, -3.0, 3.0) * 10) / 10; };
  for (int i = 0; i < params.m; ++i) {
    for (int j = 0; j < nx; ++j) {
      if (Uniform(rng, 0.0, 1.0) < 0.5) milp.A(i, j) = coef();
    }
    bool any = false;
    for (int q = 0; q < ny; ++q) {
      if (col_block[q] == row_block[i] && Uniform(rng, 0.0, 1.0) < 0.6) {
        milp.B(i, q) = coef();
        any = any || milp.B(i, q) != 0.0;
      }
    }
    if (!any) {
      for (int q = 0; q < ny; ++q) {
        if (col_block[q] == row_block[i]) {
          milp.B(i, q) = 1.0;
          break;
        }
      }
    }
    const double act = milp.A.row(i).dot(x0) + milp.B.row(i).dot(y0);
    const double slack = Uniform(rng, 0.0, 1.0) < 0.4 ? 0.0 : Uniform(rng, 0.0, 1.5);
    milp.b[i] = std::round((act - slack) * 100) / 100 - 0.01;
  }
  // d = B^T pi0 with pi0 > 0 keeps the dual region nonempty.
  Eigen::VectorXd pi0(params.m);
  for (int i = 0; i < params.m; ++i) pi0[i] = std::round(Uniform(rng, 0.1, 1.0) * 100) / 100;
  milp.d = milp.B.transpose() * pi0;
  if (params.cover_row) {
    milp.D = Eigen::MatrixXd::Ones(1, nx);
    milp.h = Eigen::VectorXd::Constant(1, 1.0);
  } else {
    milp.D.resize(0, nx);
    milp.h.resize(0);
  }
  if (nb > 1) {
    for (int k = 0; k < nb; ++k) {
      benders::Scenario sc;
      for (int i = 0; i < params.m; ++i) {
        if (row_block[i] == k) sc.rows.push_back(i);
      }
      for (int q = 0; q < ny; ++q) {
        if (col_block[q] == k) sc.y_cols.push_back(q);
      }
      milp.scenarios.push_back(std::move(sc));
    }
  }
  milp.Validate();
  return milp;
}

}  // namespace bdx::problems
