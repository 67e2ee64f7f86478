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

#include "rsma/core.hpp"
#include "rsma/socp.hpp"
#include "rsma/wmmse.hpp"

namespace rsma::subproblem {

/// Inputs of one convex precoder/common-rate update: fixed equalizers and
/// MSE weights, the WSR weights of the outer objective, and the strategy
/// variant to assemble.
struct SubproblemSpec {
  ChannelSet channel;
  Eigen::VectorXd wsr_weights;  // strictly positive, one per user
  wmmse::WmmseState state;
  double r0_threshold = 0.0;
  double power_budget = 1.0;
  Strategy strategy = Strategy::Rs;
  Eigen::Index scsic_first = 0;  // user decoded first (SC-SIC only)

  void validate() const;
};

/// ||F z||^2 + q'z + r. F rows come straight from the weighted rank-one
/// channel terms, so F'F is positive semidefinite by construction.
struct QuadraticForm {
  Eigen::MatrixXd F;  // may have zero rows (purely affine)
  Eigen::VectorXd q;
  double r = 0.0;

  double value(const Eigen::VectorXd& z) const;
};

/// a'z + b <= 0.
struct LinearConstraint {
  Eigen::VectorXd a;
  double b = 0.0;
};

/// Maps the flat decision vector to precoder columns and common-rate
/// transformation entries. Precoder blocks are [Re p; Im p] per active
/// column, in active_columns order, followed by X0 and the X_{k,0} entries
/// for x_users.
struct VariableLayout {
  Eigen::Index nt = 0;
  Eigen::Index num_users = 0;
  std::vector<Eigen::Index> active_columns;  // 0 = common column, k = user k-1's private
  std::vector<Eigen::Index> x_users;         // users carrying an X_{k,0} variable

  Eigen::Index num_vars() const {
    return 2 * nt * static_cast<Eigen::Index>(active_columns.size()) + 1 +
           static_cast<Eigen::Index>(x_users.size());
  }
  Eigen::Index column_offset(size_t position) const {
    return 2 * nt * static_cast<Eigen::Index>(position);
  }
  Eigen::Index x0_index() const {
    return 2 * nt * static_cast<Eigen::Index>(active_columns.size());
  }
  Eigen::Index xk_index(size_t position) const {
    return x0_index() + 1 + static_cast<Eigen::Index>(position);
  }

  /// Rebuilds the full Nt x (K+1) precoder from a decision vector; inactive
  /// columns are zero.
  PrecoderMatrix extract_precoder(const Eigen::VectorXd& z) const;
  /// Full-length x = [X0, X_{1,0}, ..., X_{K,0}]; absent entries are zero.
  Eigen::VectorXd extract_x(const Eigen::VectorXd& z) const;
  /// Inverse of extract: packs (P, x) into a decision vector.
  Eigen::VectorXd pack(const PrecoderMatrix& p, const Eigen::VectorXd& x_full) const;
};

/// Convex QCQP over the real embedding of the active precoder columns plus
/// the common-rate transformation variables.
struct QcqpProblem {
  VariableLayout layout;
  QuadraticForm objective;  // minimized
  std::vector<QuadraticForm> quad_constraints;   // each <= 0
  std::vector<LinearConstraint> linear_constraints;  // each <= 0

  Eigen::Index num_vars() const { return layout.num_vars(); }
  double objective_value(const Eigen::VectorXd& z) const { return objective.value(z); }
  /// Worst constraint violation at z (0 when feasible).
  double max_violation(const Eigen::VectorXd& z) const;
};

QcqpProblem build_rs_subproblem(const SubproblemSpec& spec);
QcqpProblem build_mulp_subproblem(const SubproblemSpec& spec);
QcqpProblem build_scsic_subproblem(const SubproblemSpec& spec);
QcqpProblem build_subproblem(const SubproblemSpec& spec);  // dispatches on spec.strategy

/// Epigraph reformulation: every convex quadratic becomes a rotated cone
/// written as a standard second-order cone block.
socp::ConeProgram lower_to_socp(const QcqpProblem& qcqp);

enum class SubproblemStatus { Optimal, Infeasible, NumericalFailure };

const char* to_string(SubproblemStatus s);

struct SubproblemSolution {
  SubproblemStatus status = SubproblemStatus::NumericalFailure;
  PrecoderMatrix precoder;
  Eigen::VectorXd x;       // [X0, X_{1,0}, ..., X_{K,0}]
  double objective = 0.0;  // QCQP objective at the returned point
  socp::SocpStatus solver_status = socp::SocpStatus::NumericalError;
  int solver_iterations = 0;
  double duality_gap = 0.0;
};

SubproblemSolution solve(const QcqpProblem& qcqp, const socp::SocpOptions& opts = {});

/// Upper bound on the achievable multicast rate min_k R_{k,0}: all power on
/// the common stream, interference-free, toward the weakest user.
double multicast_rate_upper_bound(const ChannelSet& ch, double power_budget);

/// Necessary-condition screen for r0_threshold feasibility. The solver's
/// certificate remains authoritative; this is a cheap early flag.
bool passes_feasibility_screen(const ChannelSet& ch, double power_budget, double r0_threshold);

}  // namespace rsma::subproblem
