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
//
// Assembles the convex precoder/common-rate subproblem for fixed (u, g):
//
//   minimize    sum_k w_k (X_{k,0} + u_k eps_k(P) - log2 u_k)
//   subject to  X_0 + sum_j X_{j,0} + 1 >= u_{k,0} eps_{k,0}(P) - log2 u_{k,0}
//               X_0 <= -R0th,  X_{k,0} <= 0,  tr(P P^H) <= Pt
//
// with eps expanded as convex quadratics in the real embedding of P. The
// MU-LP variant keeps only X_0; the SC-SIC variant keeps X_0 and the
// first-decoded user's share and removes that user's private column.

#include "rsma/subproblem.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace rsma::subproblem {

namespace {

constexpr double kSqrt2Inv = 0.7071067811865475244;

// Real-embedding rows of h^H p on a 2*Nt column block: row `row` gets the
// real part, row `row + 1` the imaginary part.
void fill_inner_product_rows(const CVector& h, Eigen::Index offset, double scale,
                             Eigen::MatrixXd& F, Eigen::Index row) {
  const Eigen::Index nt = h.size();
  for (Eigen::Index m = 0; m < nt; ++m) {
    F(row, offset + m) = scale * h(m).real();
    F(row, offset + nt + m) = scale * h(m).imag();
    F(row + 1, offset + m) = -scale * h(m).imag();
    F(row + 1, offset + nt + m) = scale * h(m).real();
  }
}

// Gradient of beta * Re{ g * h^H p } with respect to the block of p.
void add_linear_inner_product(const CVector& h, Complex g, double beta, Eigen::Index offset,
                              Eigen::VectorXd& q) {
  const Eigen::Index nt = h.size();
  for (Eigen::Index m = 0; m < nt; ++m) {
    q(offset + m) += beta * (g.real() * h(m).real() + g.imag() * h(m).imag());
    q(offset + nt + m) += beta * (g.real() * h(m).imag() - g.imag() * h(m).real());
  }
}

struct Builder {
  const SubproblemSpec& spec;
  VariableLayout layout;
  Eigen::Index n = 0;

  explicit Builder(const SubproblemSpec& s) : spec(s) {
    layout.nt = s.channel.num_antennas();
    layout.num_users = s.channel.num_users();
  }

  Eigen::Index block_of_column(Eigen::Index col) const {
    for (size_t pos = 0; pos < layout.active_columns.size(); ++pos)
      if (layout.active_columns[pos] == col) return layout.column_offset(pos);
    return -1;
  }

  bool column_active(Eigen::Index col) const { return block_of_column(col) >= 0; }

  // xi_{k,0} quadratic for the common-layer constraint of user k:
  //   u0 |g0|^2 (sum over active columns |h_k^H p_l|^2)
  //   - 2 u0 Re{g0 h_k^H p0} - X0 - sum_{j in x_users} X_{j,0}
  //   + u0 (|g0|^2 + 1) - log2(u0) - 1  <= 0
  QuadraticForm common_layer_constraint(Eigen::Index k) const {
    const CVector& h = spec.channel.channel(k);
    const Complex g0 = spec.state.g_common.at(static_cast<size_t>(k));
    const double u0 = spec.state.u_common.at(static_cast<size_t>(k));
    const double alpha = u0 * std::norm(g0);

    QuadraticForm f;
    f.q = Eigen::VectorXd::Zero(n);
    const size_t ncols = layout.active_columns.size();
    f.F = Eigen::MatrixXd::Zero(alpha > 0.0 ? 2 * static_cast<Eigen::Index>(ncols) : 0, n);
    if (alpha > 0.0) {
      const double scale = std::sqrt(alpha);
      for (size_t pos = 0; pos < ncols; ++pos)
        fill_inner_product_rows(h, layout.column_offset(pos), scale, f.F,
                                2 * static_cast<Eigen::Index>(pos));
    }
    add_linear_inner_product(h, g0, -2.0 * u0, block_of_column(0), f.q);
    f.q(layout.x0_index()) = -1.0;
    for (size_t pos = 0; pos < layout.x_users.size(); ++pos) f.q(layout.xk_index(pos)) = -1.0;
    f.r = u0 * (std::norm(g0) + 1.0) - std::log2(u0) - 1.0;
    return f;
  }

  QuadraticForm objective() const {
    QuadraticForm f;
    f.q = Eigen::VectorXd::Zero(n);
    f.r = 0.0;

    // Count quadratic rows first: two per (user, active private column)
    // with a nonzero coefficient.
    std::vector<std::pair<Eigen::Index, double>> active_terms;  // (user, alpha)
    for (Eigen::Index k = 0; k < layout.num_users; ++k) {
      const double w = spec.wsr_weights(k);
      const double uk = spec.state.u_private.at(static_cast<size_t>(k));
      const double alpha = w * uk * std::norm(spec.state.g_private.at(static_cast<size_t>(k)));
      if (alpha > 0.0) active_terms.emplace_back(k, alpha);
    }
    Eigen::Index private_cols = 0;
    for (Eigen::Index col : layout.active_columns)
      if (col != 0) ++private_cols;
    f.F = Eigen::MatrixXd::Zero(2 * static_cast<Eigen::Index>(active_terms.size()) * private_cols, n);

    Eigen::Index row = 0;
    for (const auto& [k, alpha_k] : active_terms) {
      const CVector& h = spec.channel.channel(k);
      const double scale = std::sqrt(alpha_k);
      for (size_t pos = 0; pos < layout.active_columns.size(); ++pos) {
        if (layout.active_columns[pos] == 0) continue;  // T_k excludes the common column
        fill_inner_product_rows(h, layout.column_offset(pos), scale, f.F, row);
        row += 2;
      }
    }

    for (Eigen::Index k = 0; k < layout.num_users; ++k) {
      const double w = spec.wsr_weights(k);
      const double uk = spec.state.u_private.at(static_cast<size_t>(k));
      const Complex gk = spec.state.g_private.at(static_cast<size_t>(k));
      const Eigen::Index own = block_of_column(k + 1);
      if (own >= 0)
        add_linear_inner_product(spec.channel.channel(k), gk, -2.0 * w * uk, own, f.q);
      f.r += w * (uk * std::norm(gk) + uk - std::log2(uk));
    }
    for (size_t pos = 0; pos < layout.x_users.size(); ++pos)
      f.q(layout.xk_index(pos)) = spec.wsr_weights(layout.x_users[pos]);
    return f;
  }

  QuadraticForm power_constraint() const {
    QuadraticForm f;
    const Eigen::Index pvars = 2 * layout.nt * static_cast<Eigen::Index>(layout.active_columns.size());
    f.F = Eigen::MatrixXd::Zero(pvars, n);
    f.F.leftCols(pvars).setIdentity();
    f.q = Eigen::VectorXd::Zero(n);
    f.r = -spec.power_budget;
    return f;
  }

  QcqpProblem finish() {
    n = layout.num_vars();
    QcqpProblem p;
    p.layout = layout;
    p.objective = objective();
    for (Eigen::Index k = 0; k < layout.num_users; ++k)
      p.quad_constraints.push_back(common_layer_constraint(k));
    p.quad_constraints.push_back(power_constraint());

    LinearConstraint qos;  // X0 <= -R0th
    qos.a = Eigen::VectorXd::Zero(n);
    qos.a(layout.x0_index()) = 1.0;
    qos.b = spec.r0_threshold;
    p.linear_constraints.push_back(std::move(qos));
    for (size_t pos = 0; pos < layout.x_users.size(); ++pos) {
      LinearConstraint share;  // X_{k,0} <= 0
      share.a = Eigen::VectorXd::Zero(n);
      share.a(layout.xk_index(pos)) = 1.0;
      share.b = 0.0;
      p.linear_constraints.push_back(std::move(share));
    }
    return p;
  }
};

}  // namespace

void SubproblemSpec::validate() const {
  const Eigen::Index K = channel.num_users();
  if (wsr_weights.size() != K)
    throw std::invalid_argument("SubproblemSpec: wsr_weights must have one entry per user");
  if (!(wsr_weights.minCoeff() > 0.0))
    throw std::invalid_argument("SubproblemSpec: wsr_weights must be strictly positive");
  if (static_cast<Eigen::Index>(state.g_common.size()) != K ||
      static_cast<Eigen::Index>(state.g_private.size()) != K ||
      static_cast<Eigen::Index>(state.u_common.size()) != K ||
      static_cast<Eigen::Index>(state.u_private.size()) != K)
    throw std::invalid_argument("SubproblemSpec: WMMSE state has wrong user count");
  for (Eigen::Index k = 0; k < K; ++k)
    if (!(state.u_common[static_cast<size_t>(k)] > 0.0) ||
        !(state.u_private[static_cast<size_t>(k)] > 0.0))
      throw std::invalid_argument("SubproblemSpec: MSE weights must be strictly positive");
  if (!(r0_threshold >= 0.0))
    throw std::invalid_argument("SubproblemSpec: r0_threshold must be >= 0");
  if (!(power_budget > 0.0))
    throw std::invalid_argument("SubproblemSpec: power budget must be > 0");
  if (strategy == Strategy::Scsic) {
    if (K > 2)
      throw std::invalid_argument("SubproblemSpec: SC-SIC is only supported for K <= 2");
    if (scsic_first < 0 || scsic_first >= K)
      throw std::invalid_argument("SubproblemSpec: SC-SIC decoding order out of range");
  }
}

double QuadraticForm::value(const Eigen::VectorXd& z) const {
  double v = q.dot(z) + r;
  if (F.rows() > 0) v += (F * z).squaredNorm();
  return v;
}

PrecoderMatrix VariableLayout::extract_precoder(const Eigen::VectorXd& z) const {
  CMatrix mat = CMatrix::Zero(nt, num_users + 1);
  for (size_t pos = 0; pos < active_columns.size(); ++pos) {
    const Eigen::Index off = column_offset(pos);
    for (Eigen::Index m = 0; m < nt; ++m)
      mat(m, active_columns[pos]) = Complex(z(off + m), z(off + nt + m));
  }
  return PrecoderMatrix(std::move(mat));
}

Eigen::VectorXd VariableLayout::extract_x(const Eigen::VectorXd& z) const {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(num_users + 1);
  x(0) = z(x0_index());
  for (size_t pos = 0; pos < x_users.size(); ++pos) x(x_users[pos] + 1) = z(xk_index(pos));
  return x;
}

Eigen::VectorXd VariableLayout::pack(const PrecoderMatrix& p, const Eigen::VectorXd& x_full) const {
  Eigen::VectorXd z = Eigen::VectorXd::Zero(num_vars());
  for (size_t pos = 0; pos < active_columns.size(); ++pos) {
    const Eigen::Index off = column_offset(pos);
    for (Eigen::Index m = 0; m < nt; ++m) {
      z(off + m) = p.matrix()(m, active_columns[pos]).real();
      z(off + nt + m) = p.matrix()(m, active_columns[pos]).imag();
    }
  }
  z(x0_index()) = x_full(0);
  for (size_t pos = 0; pos < x_users.size(); ++pos) z(xk_index(pos)) = x_full(x_users[pos] + 1);
  return z;
}

double QcqpProblem::max_violation(const Eigen::VectorXd& z) const {
  double v = 0.0;
  for (const auto& qc : quad_constraints) v = std::max(v, qc.value(z));
  for (const auto& lc : linear_constraints) v = std::max(v, lc.a.dot(z) + lc.b);
  return v;
}

QcqpProblem build_rs_subproblem(const SubproblemSpec& spec) {
  spec.validate();
  if (spec.strategy != Strategy::Rs)
    throw std::invalid_argument("build_rs_subproblem: spec.strategy must be RS");
  Builder b(spec);
  b.layout.active_columns.push_back(0);
  for (Eigen::Index k = 0; k < b.layout.num_users; ++k) b.layout.active_columns.push_back(k + 1);
  for (Eigen::Index k = 0; k < b.layout.num_users; ++k) b.layout.x_users.push_back(k);
  return b.finish();
}

QcqpProblem build_mulp_subproblem(const SubproblemSpec& spec) {
  spec.validate();
  if (spec.strategy != Strategy::Mulp)
    throw std::invalid_argument("build_mulp_subproblem: spec.strategy must be MU-LP");
  Builder b(spec);
  b.layout.active_columns.push_back(0);
  for (Eigen::Index k = 0; k < b.layout.num_users; ++k) b.layout.active_columns.push_back(k + 1);
  return b.finish();
}

QcqpProblem build_scsic_subproblem(const SubproblemSpec& spec) {
  spec.validate();
  if (spec.strategy != Strategy::Scsic)
    throw std::invalid_argument("build_scsic_subproblem: spec.strategy must be SC-SIC");
  Builder b(spec);
  b.layout.active_columns.push_back(0);
  for (Eigen::Index k = 0; k < b.layout.num_users; ++k)
    if (k != spec.scsic_first) b.layout.active_columns.push_back(k + 1);
  b.layout.x_users.push_back(spec.scsic_first);
  return b.finish();
}

QcqpProblem build_subproblem(const SubproblemSpec& spec) {
  switch (spec.strategy) {
    case Strategy::Rs: return build_rs_subproblem(spec);
    case Strategy::Mulp: return build_mulp_subproblem(spec);
    case Strategy::Scsic: return build_scsic_subproblem(spec);
  }
  throw std::invalid_argument("build_subproblem: unknown strategy");
}

socp::ConeProgram lower_to_socp(const QcqpProblem& qcqp) {
  const Eigen::Index nz = qcqp.num_vars();
  const bool epigraph = qcqp.objective.F.rows() > 0;
  const Eigen::Index n = nz + (epigraph ? 1 : 0);

  socp::ConeProgram cp;
  cp.c = Eigen::VectorXd::Zero(n);
  cp.c.head(nz) = qcqp.objective.q;
  if (epigraph) cp.c(nz) = 1.0;
  cp.objective_offset = qcqp.objective.r;

  // Orthant rows: the linear constraints plus any quadratic constraint that
  // degenerated to affine.
  std::vector<const QuadraticForm*> cone_quads;
  std::vector<std::pair<Eigen::VectorXd, double>> orthant;  // a'z + b <= 0
  for (const auto& lc : qcqp.linear_constraints) orthant.emplace_back(lc.a, lc.b);
  for (const auto& qc : qcqp.quad_constraints) {
    if (qc.F.rows() == 0)
      orthant.emplace_back(qc.q, qc.r);
    else
      cone_quads.push_back(&qc);
  }

  Eigen::Index rows = static_cast<Eigen::Index>(orthant.size());
  for (const auto* qc : cone_quads) rows += qc->F.rows() + 2;
  if (epigraph) rows += qcqp.objective.F.rows() + 2;

  cp.G = Eigen::MatrixXd::Zero(rows, n);
  cp.h = Eigen::VectorXd::Zero(rows);
  cp.nonneg = static_cast<Eigen::Index>(orthant.size());

  Eigen::Index r = 0;
  for (const auto& [a, b] : orthant) {
    cp.G.row(r).head(nz) = a.transpose();
    cp.h(r) = -b;
    ++r;
  }

  // ||F z||^2 <= d(z) as the standard cone
  //   [ (d + 1/2)/sqrt2, (d - 1/2)/sqrt2, F z ].
  auto emit_soc = [&](const Eigen::MatrixXd& F, const Eigen::VectorXd& q_d, double r_d,
                      double t_coeff) {
    // d(z) = -q_d'z - r_d + t_coeff * t
    cp.G.row(r).head(nz) = kSqrt2Inv * q_d.transpose();
    cp.G.row(r + 1).head(nz) = kSqrt2Inv * q_d.transpose();
    if (epigraph && t_coeff != 0.0) {
      cp.G(r, nz) = -kSqrt2Inv * t_coeff;
      cp.G(r + 1, nz) = -kSqrt2Inv * t_coeff;
    }
    cp.h(r) = kSqrt2Inv * (0.5 - r_d);
    cp.h(r + 1) = kSqrt2Inv * (-0.5 - r_d);
    cp.G.block(r + 2, 0, F.rows(), nz) = -F;
    cp.soc_dims.push_back(F.rows() + 2);
    r += F.rows() + 2;
  };

  for (const auto* qc : cone_quads) emit_soc(qc->F, qc->q, qc->r, 0.0);
  if (epigraph)
    emit_soc(qcqp.objective.F, Eigen::VectorXd::Zero(nz), 0.0, 1.0);

  cp.validate();
  return cp;
}

const char* to_string(SubproblemStatus s) {
  switch (s) {
    case SubproblemStatus::Optimal: return "optimal";
    case SubproblemStatus::Infeasible: return "infeasible";
    case SubproblemStatus::NumericalFailure: return "numerical_failure";
  }
  return "unknown";
}

SubproblemSolution solve(const QcqpProblem& qcqp, const socp::SocpOptions& opts) {
  socp::ConeProgram cp = lower_to_socp(qcqp);
  // Large WSR weights inflate the dual scale and shrink the embedding's tau,
  // which starves the normalized residuals of precision. Solving with a
  // normalized objective is equivalent; the reported objective is evaluated
  // on the original quadratic form below.
  const double cscale = std::max(1.0, cp.c.lpNorm<Eigen::Infinity>());
  cp.c /= cscale;
  cp.objective_offset /= cscale;
  const socp::SocpResult r = socp::solve(cp, opts);

  SubproblemSolution out{SubproblemStatus::NumericalFailure,
                         PrecoderMatrix(CMatrix::Zero(qcqp.layout.nt, qcqp.layout.num_users + 1)),
                         Eigen::VectorXd::Zero(qcqp.layout.num_users + 1),
                         0.0,
                         r.status,
                         r.iterations,
                         r.duality_gap * cscale};
  switch (r.status) {
    case socp::SocpStatus::Optimal: {
      const Eigen::VectorXd z = r.x.head(qcqp.num_vars());
      out.status = SubproblemStatus::Optimal;
      out.precoder = qcqp.layout.extract_precoder(z);
      out.x = qcqp.layout.extract_x(z);
      out.objective = qcqp.objective_value(z);
      break;
    }
    case socp::SocpStatus::PrimalInfeasible:
      out.status = SubproblemStatus::Infeasible;
      break;
    default:
      out.status = SubproblemStatus::NumericalFailure;
      break;
  }
  return out;
}

double multicast_rate_upper_bound(const ChannelSet& ch, double power_budget) {
  double min_gain = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < ch.num_users(); ++k)
    min_gain = std::min(min_gain, ch.channel(k).squaredNorm());
  return std::log1p(power_budget * min_gain) / std::numbers::ln2;
}

bool passes_feasibility_screen(const ChannelSet& ch, double power_budget, double r0_threshold) {
  return r0_threshold <= multicast_rate_upper_bound(ch, power_budget);
}

}  // namespace rsma::subproblem
