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

// Disjunctive cut generation for the Benders reformulation.
//
// For a split (phi, phi0) the disjunctive LP (DCGLP) projects a point
// (x^, t^) onto the convex hull of the two sides
//
//     P1 = P ∩ {phi^T x >= phi0 + 1},   P2 = P ∩ {phi^T x <= phi0},
//
// where P is the continuous relaxation of the Benders reformulation. Each
// side is written in homogenized ("raised") form over a block
// omega = (omega_x, omega_t, omega_0), omega in {kappa, nu}:
//
//     min tau
//     s.t. alpha_x^T omega_x + alpha_t^T omega_t - alpha_0 omega_0 >= 0
//              for every known cut of the epigraph of f      (both blocks)
//          D omega_x >= h omega_0,  l omega_0 <= omega_x <= u omega_0
//          phi^T kappa_x >= (phi0 + 1) kappa_0,  -phi^T nu_x >= -phi0 nu_0
//          kappa_0 + nu_0 = 1                                  (gamma_0)
//          kappa_x + nu_x - s_x = x^                           (gamma_x)
//          kappa_t + nu_t - s_t = t^                           (gamma_t)
//          tau >= ||(s_x, s_t)||_p,   p in {1, inf}.
//
// The multipliers of the three linking rows give the cut
// gamma_x^T x + gamma_t^T t >= gamma_0. The epigraph rows are not known in
// advance; the oracle adds them by querying a typical oracle at
// omega / omega_0. When the value function splits into N blocks, t has N
// components and every block is queried separately.

#ifndef BDX_DCGLP_DCGLP_HPP_
#define BDX_DCGLP_DCGLP_HPP_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bdx/benders/block_milp.hpp"
#include "bdx/benders/oracle.hpp"
#include "bdx/lp/simplex.hpp"

namespace bdx::dcglp {

using benders::BlockMilp;
using benders::Cut;

// Disjunction phi^T x <= phi0  or  phi^T x >= phi0 + 1.
struct Split {
  Eigen::VectorXi phi;
  int phi0 = 0;

  // (e_i, 0).
  static Split Simple(int n_x, int i);
  // Throws BadShape unless phi has n_x entries supported on integer indices.
  void Check(const BlockMilp& milp) const;
};

// Node fixings that turn into the lifting rows
//     -omega_x[j] >= 0 (j in zero),  omega_x[j] - omega_0 >= 0 (j in one).
struct Fixings {
  std::vector<int> zero;
  std::vector<int> one;
  bool empty() const { return zero.empty() && one.empty(); }
};

struct DcglpConfig {
  // 1 or +inf.
  double p = kInf;
  // Blocks with omega_0 at or below this are treated as inside.
  double omega_tol = 1e-6;
  // Relative gap between the relaxation value and the best known upper bound.
  double gap = 1e-3;
  // Consecutive iterations without lower-bound progress before stopping. Only
  // applies once the lower bound is positive.
  int stall_limit = 3;
  double zero_tol = 1e-7;
  int max_iterations = 1000;
  lp::SimplexOptions lp;
};

struct DcglpPoint {
  Eigen::VectorXd kappa_x, kappa_t;
  double kappa_0 = 0.0;
  Eigen::VectorXd nu_x, nu_t;
  double nu_0 = 0.0;
  Eigen::VectorXd s_x, s_t;
  double tau = 0.0;
};

// Row multipliers of a relaxation solve. Everything except gamma is
// nonnegative. Lifting multipliers are zero outside the fixed indices.
struct DcglpDuals {
  double gamma_0 = 0.0;
  Eigen::VectorXd gamma_x, gamma_t;
  double sigma1 = 0.0, sigma2 = 0.0;
  Eigen::VectorXd delta1, delta2;  // omega_x >= l omega_0
  Eigen::VectorXd eta1, eta2;      // -omega_x >= -u omega_0
  Eigen::VectorXd theta1, theta2;  // D omega_x >= h omega_0
  Eigen::VectorXd zeta1, zeta2;
  Eigen::VectorXd xi1, xi2;
};

// Relaxation R of the disjunctive LP for one split and one point.
class DcglpModel {
 public:
  // n_t is the number of t components (value-function blocks).
  DcglpModel(const BlockMilp& milp, int n_t, const Split& split,
             const Eigen::VectorXd& x_hat, const Eigen::VectorXd& t_hat,
             double p, const Fixings& fixings = {},
             lp::SimplexOptions options = {});

  // alpha_0 omega_0 - alpha_x^T omega_x - alpha_t^T omega_t <= 0 for
  // omega = kappa and omega = nu, as >= rows over the model columns.
  std::array<lp::Row, 2> RaiseCut(const Cut& cut) const;
  // Adds both raised rows.
  void AddCut(const Cut& cut);

  lp::LpOutcome Solve();
  DcglpPoint Point(const lp::LpOutcome& out) const;
  DcglpDuals Duals(const lp::LpOutcome& out) const;
  // gamma_x^T x + gamma_t^T t >= gamma_0 with kind kDisjunctive.
  static Cut CutFromDuals(const DcglpDuals& duals);

  const lp::LpModel& model() const { return model_; }
  int num_rows() const { return model_.num_rows(); }
  // Rows present before any cut was raised.
  int base_rows() const { return base_rows_; }
  int raised_rows() const { return num_rows() - base_rows_; }
  int n_x() const { return n_x_; }
  int n_t() const { return n_t_; }

  // Column indices.
  int KappaX(int j) const { return j; }
  int KappaT(int j) const { return n_x_ + j; }
  int Kappa0() const { return n_x_ + n_t_; }
  int NuX(int j) const { return width_ + j; }
  int NuT(int j) const { return width_ + n_x_ + j; }
  int Nu0() const { return width_ + n_x_ + n_t_; }
  int SX(int j) const { return 2 * width_ + j; }
  int ST(int j) const { return 2 * width_ + n_x_ + j; }
  int Tau() const { return 2 * width_ + n_x_ + n_t_; }

 private:
  struct SideRows {
    int theta = 0, delta = 0, eta = 0;
  };

  int n_x_;
  int n_t_;
  int width_;
  int m_d_;
  int row_gamma0_ = 0, row_gamma_x_ = 0, row_gamma_t_ = 0;
  int row_sigma1_ = 0, row_sigma2_ = 0;
  std::array<SideRows, 2> side_;
  // Lifting rows per side: (index, row) pairs.
  std::array<std::vector<std::pair<int, int>>, 2> zeta_rows_, xi_rows_;
  int base_rows_ = 0;
  lp::LpModel model_;
  lp::SimplexOptions options_;
  std::optional<lp::Simplex> simplex_;
};

enum class DcglpStatus {
  kConverged,
  kGapReached,
  kStalled,
  kInsideHull,
  kIterLimit
};
std::string ToString(DcglpStatus status);

struct Byproduct {
  Cut cut;
  // Violation at the point where the typical oracle was queried.
  double violation = 0.0;
};

struct DisjunctiveResult {
  DcglpStatus status = DcglpStatus::kIterLimit;
  double tau = 0.0;
  Cut cut;
  std::vector<Byproduct> byproducts;
  int iterations = 0;
  // Relaxation value, upper bound and extracted cut after every solve.
  std::vector<double> tau_trace;
  std::vector<double> ub_trace;
  std::vector<Cut> cut_trace;
  DcglpPoint point;
  DcglpDuals duals;
};

// What the typical oracle reported for one block of variables.
struct BlockQuery {
  // False when omega_0 was at or below the tolerance.
  bool queried = false;
  std::vector<bool> inside;
  std::vector<double> value;
};

// Objective of the relaxation point after replacing omega_t by
// omega_0 f(omega_x / omega_0) on every block that was cut off. Returns +inf
// when one of those values is infinite.
double UpperBoundCandidate(const DcglpPoint& point, const BlockQuery& kappa,
                           const BlockQuery& nu, const Eigen::VectorXd& t_hat,
                           double p);

// Throws BadNorm unless p is 1 or +inf.
void CheckNorm(double p);
// Dual norm of (gamma_x, gamma_t) for the primal p.
double DualNorm(const Eigen::VectorXd& gamma_x, const Eigen::VectorXd& gamma_t,
                double p);

// Cutting-plane solve of the disjunctive LP with a typical oracle. Handles
// one or several value-function blocks (typical.num_blocks()).
class DisjunctiveOracle {
 public:
  DisjunctiveOracle(const BlockMilp& milp, benders::TypicalOracle& typical,
                    DcglpConfig config = {});

  // `seeds` start the relaxation of the epigraph, `previous` are earlier
  // disjunctive cuts. The bound t_j >= L_j of every block is always added.
  // Throws Infeasible when the relaxation has no solution.
  DisjunctiveResult Separate(const Split& split, const Eigen::VectorXd& x,
                             const Eigen::VectorXd& t,
                             std::span<const Cut> seeds = {},
                             std::span<const Cut> previous = {},
                             const Fixings& fixings = {});

  const std::vector<double>& t_lower() const { return t_lower_; }
  const DcglpConfig& config() const { return config_; }
  DcglpConfig& config() { return config_; }
  benders::TypicalOracle& typical() { return typical_; }
  const BlockMilp& milp() const { return milp_; }
  long relaxation_solves() const { return solves_; }

 private:
  const BlockMilp& milp_;
  benders::TypicalOracle& typical_;
  DcglpConfig config_;
  std::vector<double> t_lower_;
  long solves_ = 0;
};

// One-shot convenience wrapper around DisjunctiveOracle.
DisjunctiveResult TheOracle(const BlockMilp& milp, const Split& split,
                            const Eigen::VectorXd& x, const Eigen::VectorXd& t,
                            benders::TypicalOracle& typical,
                            const DcglpConfig& config = {},
                            std::span<const Cut> seeds = {},
                            std::span<const Cut> previous = {});

}  // namespace bdx::dcglp

#endif  // BDX_DCGLP_DCGLP_HPP_
