// SPDX-License-Identifier: Apache-2.0
//
// rsma-sim: precoder optimization and rate regions for joint unicast/multicast downlink
// Copyright (C) 2026 the rsma-sim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

namespace rsma::socp {

// Cone program in standard form:
//
//   minimize    c'x + offset
//   subject to  G x + s = h,   s in K
//
// where K is the product of a nonnegative orthant of dimension `nonneg`
// (the leading rows of s) followed by second-order cones of the listed
// dimensions: s_block = (s0, s1) with s0 >= ||s1||_2.
//
// The dual variable z lives in the same (self-dual) cone. A primal
// infeasibility certificate is z in K with G'z = 0 and h'z < 0; a dual
// infeasibility (primal unboundedness) certificate is x with c'x < 0 and
// G x + s = 0 for some s in K.
struct ConeProgram {
  Eigen::VectorXd c;
  Eigen::MatrixXd G;
  Eigen::VectorXd h;
  Eigen::Index nonneg = 0;
  std::vector<Eigen::Index> soc_dims;
  double objective_offset = 0.0;

  Eigen::Index num_vars() const { return c.size(); }
  Eigen::Index num_rows() const { return G.rows(); }
  void validate() const;

  // Plain-text dump for cross-checking against external solvers. Format:
  //   socp v1
  //   vars <n>  rows <m>  nonneg <l>
  //   soc <d1> <d2> ...
  //   offset <value>
  //   c <i> <value>        one line per nonzero
  //   h <i> <value>        one line per nonzero
  //   G <i> <j> <value>    one line per nonzero (row-major)
  //   end
  void dump(std::ostream& os) const;
};

enum class SocpStatus {
  Optimal,
  PrimalInfeasible,
  DualInfeasible,
  MaxIterations,
  NumericalError,
};

const char* to_string(SocpStatus s);

struct SocpOptions {
  double feas_tol = 1e-8;     // relative primal/dual residual bound
  double gap_tol_abs = 1e-8;  // absolute duality gap bound
  double gap_tol_rel = 1e-8;  // relative duality gap bound
  // Degenerate optima (strict complementarity failing) stall the gap near
  // sqrt(machine eps). After `stall_iterations` without progress the best
  // iterate is accepted if it is feasible to feas_tol and its relative gap
  // is within stall_gap_tol.
  double stall_gap_tol = 1e-6;
  int stall_iterations = 4;
  int max_iterations = 100;
  double step_fraction = 0.99;
  int refinement_steps = 2;
};

struct SocpResult {
  SocpStatus status = SocpStatus::NumericalError;
  Eigen::VectorXd x;  // primal point; unboundedness ray when DualInfeasible
  Eigen::VectorXd s;  // primal slacks
  Eigen::VectorXd z;  // dual point; infeasibility certificate when PrimalInfeasible
  double primal_objective = 0.0;  // c'x + offset
  double dual_objective = 0.0;    // -h'z + offset
  double duality_gap = 0.0;       // s'z, scaled point
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
};

SocpResult solve(const ConeProgram& prob, const SocpOptions& opts = {});

}  // namespace rsma::socp
