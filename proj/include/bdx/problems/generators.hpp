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

// Synthetic instance generators. All generators are deterministic in their
// parameters and seed.

#ifndef BDX_PROBLEMS_GENERATORS_HPP_
#define BDX_PROBLEMS_GENERATORS_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bdx/benders/block_milp.hpp"

namespace bdx::problems {

using benders::BlockMilp;

// Facility location. Class a makes transport costs dominate, class c makes
// opening costs dominate.
enum class CostClass { kA, kB, kC };
CostClass ParseCostClass(char c);
char ToChar(CostClass c);

struct UflpInstance {
  int facilities = 0;
  int customers = 0;
  CostClass cost_class = CostClass::kB;
  Eigen::VectorXd fixed;       // f_i
  Eigen::MatrixXd transport;   // c(i, j)
};

// x_i opens facility i; customer j owns the block of y_{i,j} with rows
//   sum_i y_ij >= 1, -sum_i y_ij >= -1, x_i - y_ij >= 0, y_ij >= 0,
// and the master carries sum_i x_i >= 2. Throws BadShape when I or J < 2.
BlockMilp UflpToMilp(const UflpInstance& inst);
std::pair<UflpInstance, BlockMilp> GenUflp(int facilities, int customers,
                                           std::uint64_t seed,
                                           CostClass cost_class);

struct SnipArc {
  int from = 0;
  int to = 0;
  double r = 1.0;  // evasion probability without a sensor
  double q = 1.0;  // evasion probability with a sensor
  bool sensor_eligible = false;
};

struct SnipScenario {
  int origin = 0;
  int destination = 0;
  double probability = 0.0;
};

struct SnipInstance {
  int nodes = 0;
  std::vector<SnipArc> arcs;
  std::vector<SnipScenario> scenarios;
  double budget = 0.0;
  // psi[k][j]: most reliable path value from j to the destination of k
  // without sensors.
  std::vector<std::vector<double>> psi;

  std::vector<int> SensorArcs() const;
};

struct SnipParams {
  int nodes = 12;
  double arc_density = 0.5;
  int sensors = 6;
  int scenarios = 4;
  double budget = 2.0;
  // q = q_ratio * r on every arc.
  double q_ratio = 0.1;
  std::uint64_t seed = 1;
};

// Fills psi and checks every origin reaches its destination (Disconnected
// otherwise).
void ComputePsi(SnipInstance& inst);
// x_s places a sensor on the s-th eligible arc; scenario k owns y_{., k}.
BlockMilp SnipToMilp(const SnipInstance& inst);
// Layered random DAG.
std::pair<SnipInstance, BlockMilp> GenSnip(const SnipParams& params);
// Expected evasion probability for fixed sensors, by propagating reliabilities
// with q on sensed arcs and r elsewhere.
double SnipValue(const SnipInstance& inst, const std::vector<double>& x);

// x1 in {0..50}, x2 in {0,1}, c = (-2, -1), no second-stage variables and a
// domain cut out by two fans of slowly rotating half-planes that meet at a
// far tip. Exactly (0,0) and (0,1) are feasible, both on the boundary.
// Throws ConstructionFailed if enumeration disagrees.
BlockMilp BuildMotivatingAnalog(std::uint64_t seed);

struct RandomMilpParams {
  int n_x = 6;
  int n_y = 8;
  int m = 12;
  int blocks = 1;
  // Adds the row sum_j x_j >= 1.
  bool cover_row = false;
  std::uint64_t seed = 1;
};

// Random mixed-binary instance with a nonempty dual region and at least one
// feasible binary point. Some binary points are typically outside dom f.
BlockMilp RandomMixedBinary(const RandomMilpParams& params);

}  // namespace bdx::problems

#endif  // BDX_PROBLEMS_GENERATORS_HPP_
