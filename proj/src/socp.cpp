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
// Primal-dual interior-point method on the homogeneous self-dual embedding,
// with Nesterov-Todd scaling and a Mehrotra predictor-corrector step.
// The embedded system in (x, z, s, tau, kappa), s,z in K, tau,kappa >= 0:
//
//   G'z + c tau          = 0
//   G x  + s - h tau     = 0
//   c'x + h'z + kappa    = 0
//   s'z + tau kappa      -> 0
//
// tau > kappa at convergence recovers the optimum (x,s,z)/tau; kappa > tau
// yields an infeasibility certificate. Each Newton step factors the
// quasi-definite matrix [[0, G'], [G, -W^2]] once (dense LU; the programs
// here have well under a hundred rows) and back-solves two right-hand
// sides plus iterative refinement.

#include "rsma/socp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace rsma::socp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct ConeLayout {
  Eigen::Index nonneg = 0;
  std::vector<Eigen::Index> soc_offsets;
  std::vector<Eigen::Index> soc_dims;
  Eigen::Index rows = 0;

  Eigen::Index degree() const {
    return nonneg + static_cast<Eigen::Index>(soc_dims.size());
  }
};

ConeLayout make_layout(const ConeProgram& p) {
  ConeLayout lay;
  lay.nonneg = p.nonneg;
  Eigen::Index off = p.nonneg;
  for (Eigen::Index d : p.soc_dims) {
    lay.soc_offsets.push_back(off);
    lay.soc_dims.push_back(d);
    off += d;
  }
  lay.rows = off;
  return lay;
}

// Cone identity element: ones on the orthant, (1, 0, ...) per SOC block.
Vec cone_identity(const ConeLayout& lay) {
  Vec e = Vec::Zero(lay.rows);
  e.head(lay.nonneg).setOnes();
  for (size_t b = 0; b < lay.soc_dims.size(); ++b) e(lay.soc_offsets[b]) = 1.0;
  return e;
}

// inf{ alpha : v + alpha*e in K }; negative when v is already interior.
double shift_to_interior(const ConeLayout& lay, const Vec& v) {
  double a = -kInf;
  for (Eigen::Index i = 0; i < lay.nonneg; ++i) a = std::max(a, -v(i));
  for (size_t b = 0; b < lay.soc_dims.size(); ++b) {
    const Eigen::Index o = lay.soc_offsets[b];
    const Eigen::Index d = lay.soc_dims[b];
    a = std::max(a, v.segment(o + 1, d - 1).norm() - v(o));
  }
  return a;
}

// Largest step with v + alpha*dv remaining in the cone (+inf if unbounded).
double max_step(const ConeLayout& lay, const Vec& v, const Vec& dv) {
  double alpha = kInf;
  for (Eigen::Index i = 0; i < lay.nonneg; ++i)
    if (dv(i) < 0.0) alpha = std::min(alpha, -v(i) / dv(i));
  for (size_t b = 0; b < lay.soc_dims.size(); ++b) {
    const Eigen::Index o = lay.soc_offsets[b];
    const Eigen::Index d = lay.soc_dims[b];
    const double v0 = v(o);
    const double dv0 = dv(o);
    const auto v1 = v.segment(o + 1, d - 1);
    const auto dv1 = dv.segment(o + 1, d - 1);
    // First positive root of (v0 + a dv0)^2 - ||v1 + a dv1||^2, reached
    // from the interior, is where the block leaves the cone.
    const double qa = dv0 * dv0 - dv1.squaredNorm();
    const double qb = 2.0 * (v0 * dv0 - v1.dot(dv1));
    const double qc = v0 * v0 - v1.squaredNorm();
    double root = kInf;
    const double disc = qb * qb - 4.0 * qa * qc;
    if (std::abs(qa) < 1e-300) {
      if (qb < 0.0) root = -qc / qb;
    } else if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      const double r1 = (-qb - sq) / (2.0 * qa);
      const double r2 = (-qb + sq) / (2.0 * qa);
      if (r1 > 0.0) root = std::min(root, r1);
      if (r2 > 0.0) root = std::min(root, r2);
    }
    if (root > 0.0) alpha = std::min(alpha, root);
  }
  return alpha;
}

// Jordan product u o v per cone block.
Vec jordan_product(const ConeLayout& lay, const Vec& u, const Vec& v) {
  Vec w(lay.rows);
  w.head(lay.nonneg) = u.head(lay.nonneg).cwiseProduct(v.head(lay.nonneg));
  for (size_t b = 0; b < lay.soc_dims.size(); ++b) {
    const Eigen::Index o = lay.soc_offsets[b];
    const Eigen::Index d = lay.soc_dims[b];
    const auto u1 = u.segment(o + 1, d - 1);
    const auto v1 = v.segment(o + 1, d - 1);
    w(o) = u(o) * v(o) + u1.dot(v1);
    w.segment(o + 1, d - 1) = u(o) * v1 + v(o) * u1;
  }
  return w;
}

// Solve lambda o u = v for u.
Vec jordan_divide(const ConeLayout& lay, const Vec& lambda, const Vec& v) {
  Vec u(lay.rows);
  for (Eigen::Index i = 0; i < lay.nonneg; ++i) u(i) = v(i) / lambda(i);
  for (size_t b = 0; b < lay.soc_dims.size(); ++b) {
    const Eigen::Index o = lay.soc_offsets[b];
    const Eigen::Index d = lay.soc_dims[b];
    const double l0 = lambda(o);
    const auto l1 = lambda.segment(o + 1, d - 1);
    const double det = l0 * l0 - l1.squaredNorm();
    const double u0 = (l0 * v(o) - l1.dot(v.segment(o + 1, d - 1))) / det;
    u(o) = u0;
    u.segment(o + 1, d - 1) = (v.segment(o + 1, d - 1) - u0 * l1) / l0;
  }
  return u;
}

// Nesterov-Todd scaling: symmetric W with W z = W^{-1} s = lambda.
// Orthant: W = diag(sqrt(s_i/z_i)). SOC: with J = diag(1, -I),
//   wbar = (sbar + J zbar) / (2 gamma),  gamma^2 = (1 + sbar'zbar)/2,
//   v = (wbar + e) / sqrt(2 (wbar_0 + 1)),  eta = (sres/zres)^(1/2);
// then W = eta H(v) and W^2 = eta^2 H(wbar), where H(u) = 2uu' - J.
// Both v and wbar satisfy u'Ju = 1, so H(u)^{-1} = H(Ju).
struct Scaling {
  Vec orth_w;  // sqrt(s_i / z_i)
  std::vector<double> eta;
  std::vector<Vec> v;     // square-root scaling point per SOC block
  std::vector<Vec> wbar;  // W^2 point per SOC block

  Vec apply_W(const ConeLayout& lay, const Vec& u) const {
    Vec r(lay.rows);
    r.head(lay.nonneg) = orth_w.cwiseProduct(u.head(lay.nonneg));
    for (size_t b = 0; b < lay.soc_dims.size(); ++b) {
      const Eigen::Index o = lay.soc_offsets[b];
      const Eigen::Index d = lay.soc_dims[b];
      const Vec& w = v[b];
      const auto ub = u.segment(o, d);
      Vec ju = ub;
      ju.tail(d - 1) = -ju.tail(d - 1);
      r.segment(o, d) = eta[b] * (2.0 * w * w.dot(ub) - ju);
    }
    return r;
  }

  Vec apply_Winv(const ConeLayout& lay, const Vec& u) const {
    Vec r(lay.rows);
    r.head(lay.nonneg) = u.head(lay.nonneg).cwiseQuotient(orth_w);
    for (size_t b = 0; b < lay.soc_dims.size(); ++b) {
      const Eigen::Index o = lay.soc_offsets[b];
      const Eigen::Index d = lay.soc_dims[b];
      Vec jw = v[b];  // W^{-1} = eta^{-1} H(Jv)
      jw.tail(d - 1) = -jw.tail(d - 1);
      const auto ub = u.segment(o, d);
      Vec ju = ub;
      ju.tail(d - 1) = -ju.tail(d - 1);
      r.segment(o, d) = (2.0 * jw * jw.dot(ub) - ju) / eta[b];
    }
    return r;
  }

  // Writes -W^2 into the lower-right block of the KKT matrix.
  void add_minus_W2(const ConeLayout& lay, Eigen::Index n, Mat& kkt) const {
    for (Eigen::Index i = 0; i < lay.nonneg; ++i)
      kkt(n + i, n + i) = -orth_w(i) * orth_w(i);
    for (size_t b = 0; b < lay.soc_dims.size(); ++b) {
      const Eigen::Index o = lay.soc_offsets[b];
      const Eigen::Index d = lay.soc_dims[b];
      Mat H = 2.0 * (wbar[b] * wbar[b].transpose());  // H(wbar) = 2 wbar wbar' - J
      H(0, 0) -= 1.0;
      for (Eigen::Index i = 1; i < d; ++i) H(i, i) += 1.0;
      kkt.block(n + o, n + o, d, d) = -(eta[b] * eta[b]) * H;
    }
  }
};

bool compute_scaling(const ConeLayout& lay, const Vec& s, const Vec& z, Scaling& W) {
  W.orth_w.resize(lay.nonneg);
  for (Eigen::Index i = 0; i < lay.nonneg; ++i) {
    if (!(s(i) > 0.0) || !(z(i) > 0.0)) return false;
    W.orth_w(i) = std::sqrt(s(i) / z(i));
  }
  W.eta.assign(lay.soc_dims.size(), 1.0);
  W.v.assign(lay.soc_dims.size(), Vec());
  W.wbar.assign(lay.soc_dims.size(), Vec());
  for (size_t b = 0; b < lay.soc_dims.size(); ++b) {
    const Eigen::Index o = lay.soc_offsets[b];
    const Eigen::Index d = lay.soc_dims[b];
    const auto sb = s.segment(o, d);
    const auto zb = z.segment(o, d);
    const double sres2 = sb(0) * sb(0) - sb.tail(d - 1).squaredNorm();
    const double zres2 = zb(0) * zb(0) - zb.tail(d - 1).squaredNorm();
    if (!(sres2 > 0.0) || !(zres2 > 0.0)) return false;
    const double sres = std::sqrt(sres2);
    const double zres = std::sqrt(zres2);
    Vec sbar = sb / sres;
    Vec zbar = zb / zres;
    const double gamma = std::sqrt((1.0 + sbar.dot(zbar)) / 2.0);
    Vec w = zbar;
    w.tail(d - 1) = -w.tail(d - 1);  // J zbar
    w += sbar;
    w /= (2.0 * gamma);
    Vec vb = w;
    vb(0) += 1.0;
    vb /= std::sqrt(2.0 * (w(0) + 1.0));
    W.wbar[b] = std::move(w);
    W.v[b] = std::move(vb);
    W.eta[b] = std::sqrt(sres / zres);
  }
  return true;
}

struct Metrics {
  double pres = kInf;
  double dres = kInf;
  double gap = kInf;
  double relgap = kInf;
  double pobj = 0.0;
  double dobj = 0.0;
};

Metrics compute_metrics(const ConeProgram& p, const Vec& x, const Vec& s, const Vec& z,
                        double tau) {
  Metrics m;
  const Vec xh = x / tau;
  const Vec sh = s / tau;
  const Vec zh = z / tau;
  m.pobj = p.c.dot(xh);
  m.dobj = -p.h.dot(zh);
  m.gap = sh.dot(zh);
  m.pres = (p.G * xh + sh - p.h).norm() / std::max(1.0, p.h.norm());
  m.dres = (p.G.transpose() * zh + p.c).norm() / std::max(1.0, p.c.norm());
  m.relgap = m.gap / std::max({1.0, std::abs(m.pobj), std::abs(m.dobj)});
  return m;
}

}  // namespace

void ConeProgram::validate() const {
  const Eigen::Index n = c.size();
  const Eigen::Index m = G.rows();
  if (G.cols() != n) throw std::invalid_argument("ConeProgram: G has wrong column count");
  if (h.size() != m) throw std::invalid_argument("ConeProgram: h has wrong length");
  if (nonneg < 0) throw std::invalid_argument("ConeProgram: negative orthant size");
  Eigen::Index rows = nonneg;
  for (Eigen::Index d : soc_dims) {
    if (d < 2) throw std::invalid_argument("ConeProgram: SOC dimension must be >= 2");
    rows += d;
  }
  if (rows != m) throw std::invalid_argument("ConeProgram: cone sizes do not sum to row count");
  if (!G.allFinite() || !h.allFinite() || !c.allFinite())
    throw std::invalid_argument("ConeProgram: non-finite data");
}

void ConeProgram::dump(std::ostream& os) const {
  os.precision(17);
  os << "socp v1\n";
  os << "vars " << num_vars() << " rows " << num_rows() << " nonneg " << nonneg << "\n";
  os << "soc";
  for (Eigen::Index d : soc_dims) os << " " << d;
  os << "\n";
  os << "offset " << objective_offset << "\n";
  for (Eigen::Index i = 0; i < c.size(); ++i)
    if (c(i) != 0.0) os << "c " << i << " " << c(i) << "\n";
  for (Eigen::Index i = 0; i < h.size(); ++i)
    if (h(i) != 0.0) os << "h " << i << " " << h(i) << "\n";
  for (Eigen::Index i = 0; i < G.rows(); ++i)
    for (Eigen::Index j = 0; j < G.cols(); ++j)
      if (G(i, j) != 0.0) os << "G " << i << " " << j << " " << G(i, j) << "\n";
  os << "end\n";
}

const char* to_string(SocpStatus s) {
  switch (s) {
    case SocpStatus::Optimal: return "optimal";
    case SocpStatus::PrimalInfeasible: return "primal_infeasible";
    case SocpStatus::DualInfeasible: return "dual_infeasible";
    case SocpStatus::MaxIterations: return "max_iterations";
    case SocpStatus::NumericalError: return "numerical_error";
  }
  return "unknown";
}

SocpResult solve(const ConeProgram& raw, const SocpOptions& opts) {
  raw.validate();
  const ConeLayout lay = make_layout(raw);
  const Eigen::Index n = raw.num_vars();
  const Eigen::Index m = raw.num_rows();
  const Vec e = cone_identity(lay);
  const double deg = static_cast<double>(lay.degree());

  SocpResult res;
  res.x = Vec::Zero(n);
  res.s = e;
  res.z = e;

  if (m == 0) {  // unconstrained: bounded only if c == 0
    res.status = raw.c.norm() == 0.0 ? SocpStatus::Optimal : SocpStatus::DualInfeasible;
    res.primal_objective = raw.objective_offset;
    return res;
  }

  // Row equilibration, uniform per cone block so cones are preserved. The
  // scaled slacks are s' = D s, duals z' = D^{-1} z; certificate quantities
  // (h'z, G'z) match the unscaled ones exactly.
  Vec row_scale = Vec::Ones(m);
  {
    auto block_scale = [&](Eigen::Index off, Eigen::Index len) {
      double mag = 1.0;
      for (Eigen::Index i = off; i < off + len; ++i)
        mag = std::max({mag, std::abs(raw.h(i)), raw.G.row(i).cwiseAbs().maxCoeff()});
      for (Eigen::Index i = off; i < off + len; ++i) row_scale(i) = 1.0 / mag;
    };
    for (Eigen::Index i = 0; i < lay.nonneg; ++i) block_scale(i, 1);
    for (size_t b = 0; b < lay.soc_dims.size(); ++b)
      block_scale(lay.soc_offsets[b], lay.soc_dims[b]);
  }
  ConeProgram prob = raw;
  prob.G = row_scale.asDiagonal() * raw.G;
  prob.h = row_scale.cwiseProduct(raw.h);

  Vec x = Vec::Zero(n), s = e, z = e;
  double tau = 1.0, kappa = 1.0;

  auto unscale = [&](SocpResult& r) {
    if (r.s.size() == m) r.s = r.s.cwiseQuotient(row_scale);
    if (r.z.size() == m) r.z = r.z.cwiseProduct(row_scale);
    return r;
  };

  Mat kkt = Mat::Zero(n + m, n + m);
  kkt.topRightCorner(n, m) = prob.G.transpose();
  kkt.bottomLeftCorner(m, n) = prob.G;

  Eigen::PartialPivLU<Mat> lu;

  // Refinement residuals accumulate in extended precision; the late-stage
  // KKT systems are ill-conditioned enough that double-precision residuals
  // limit the attainable feasibility floor.
  auto kkt_solve = [&](const Vec& rhs) {
    Vec u = lu.solve(rhs);
    Vec resid(n + m);
    for (int r = 0; r < opts.refinement_steps; ++r) {
      for (Eigen::Index i = 0; i < n + m; ++i) {
        long double acc = rhs(i);
        for (Eigen::Index j = 0; j < n + m; ++j)
          acc -= static_cast<long double>(kkt(i, j)) * static_cast<long double>(u(j));
        resid(i) = static_cast<double>(acc);
      }
      u += lu.solve(resid);
    }
    return u;
  };

  // Least-squares-flavored initialization: one KKT solve with W = I, then
  // shift s and z into the cone interior.
  {
    for (Eigen::Index i = 0; i < m; ++i) kkt(n + i, n + i) = -1.0;
    lu.compute(kkt);
    Vec rhs = Vec::Zero(n + m);
    rhs.tail(m) = prob.h;
    Vec sol = kkt_solve(rhs);
    x = sol.head(n);
    Vec s0 = -sol.tail(m);  // s = h - Gx from the augmented system
    const double ap = shift_to_interior(lay, s0);
    s = (ap < 0.0) ? s0 : Vec(s0 + (1.0 + ap) * e);

    rhs.setZero();
    rhs.head(n) = -prob.c;
    sol = kkt_solve(rhs);
    Vec z0 = sol.tail(m);
    const double ad = shift_to_interior(lay, z0);
    z = (ad < 0.0) ? z0 : Vec(z0 + (1.0 + ad) * e);
  }

  double best_score = kInf;
  double best_pres = kInf, best_dres = kInf, best_relgap = kInf;
  Scaling W;
  const bool trace = std::getenv("RSMA_SOCP_TRACE") != nullptr;
  double mu_prev = kInf;
  int stalled = 0;

  auto accept_stalled = [&]() {
    if (best_pres <= opts.feas_tol && best_dres <= opts.feas_tol &&
        best_relgap <= opts.stall_gap_tol) {
      res.status = SocpStatus::Optimal;
      return true;
    }
    return false;
  };

  for (int iter = 0; iter <= opts.max_iterations; ++iter) {
    // Residuals of the embedded system.
    const Vec rx = prob.G.transpose() * z + prob.c * tau;
    const Vec rz = s + prob.G * x - prob.h * tau;
    const double rtau = kappa + prob.c.dot(x) + prob.h.dot(z);
    const double mu = (s.dot(z) + tau * kappa) / (deg + 1.0);

    if (!std::isfinite(mu) || !(tau > 0.0)) {
      if (accept_stalled()) return unscale(res);
      res.status = SocpStatus::NumericalError;
      break;
    }

    const Metrics met = compute_metrics(prob, x, s, z, tau);
    if (trace)
      std::cerr << "iter " << iter << " mu=" << mu << " tau=" << tau << " kappa=" << kappa
                << " pres=" << met.pres << " dres=" << met.dres << " gap=" << met.gap
                << " pobj=" << met.pobj << "\n";
    const double score = std::max({met.pres, met.dres, met.relgap});
    if (score < best_score) {
      best_score = score;
      best_pres = met.pres;
      best_dres = met.dres;
      best_relgap = met.relgap;
      res.x = x / tau;
      res.s = s / tau;
      res.z = z / tau;
      res.primal_objective = met.pobj + prob.objective_offset;
      res.dual_objective = met.dobj + prob.objective_offset;
      res.duality_gap = met.gap;
      res.primal_residual = met.pres;
      res.dual_residual = met.dres;
      res.iterations = iter;
    }

    if (met.pres <= opts.feas_tol && met.dres <= opts.feas_tol &&
        (met.gap <= opts.gap_tol_abs || met.relgap <= opts.gap_tol_rel)) {
      res.status = SocpStatus::Optimal;
      res.x = x / tau;
      res.s = s / tau;
      res.z = z / tau;
      res.primal_objective = met.pobj + prob.objective_offset;
      res.dual_objective = met.dobj + prob.objective_offset;
      res.duality_gap = met.gap;
      res.primal_residual = met.pres;
      res.dual_residual = met.dres;
      res.iterations = iter;
      return unscale(res);
    }

    // Infeasibility certificates.
    const double hz = prob.h.dot(z);
    if (hz < -1e-14) {
      const Vec zc = z / (-hz);
      const double cert = (prob.G.transpose() * zc).norm() /
                          std::max(1.0, prob.G.norm() * zc.norm());
      if (cert <= opts.feas_tol) {
        res.status = SocpStatus::PrimalInfeasible;
        res.z = zc;
        res.x.setZero();
        res.s = Vec::Zero(m);
        res.iterations = iter;
        return unscale(res);
      }
    }
    const double cx = prob.c.dot(x);
    if (cx < -1e-14) {
      const Vec xc = x / (-cx);
      const Vec sc = s / (-cx);
      const double cert = (prob.G * xc + sc).norm() /
                          std::max(1.0, prob.G.norm() * xc.norm());
      if (cert <= opts.feas_tol) {
        res.status = SocpStatus::DualInfeasible;
        res.x = xc;
        res.s = sc;
        res.z = Vec::Zero(m);
        res.iterations = iter;
        return unscale(res);
      }
    }

    if (iter == opts.max_iterations) {
      if (accept_stalled()) return unscale(res);
      res.status = SocpStatus::MaxIterations;
      break;
    }
    if (mu < 1e-16) {  // complementarity exhausted; feasibility won't improve
      if (accept_stalled()) return unscale(res);
      res.status = SocpStatus::MaxIterations;
      break;
    }
    stalled = mu > 0.99 * mu_prev ? stalled + 1 : 0;
    mu_prev = mu;
    if (stalled >= opts.stall_iterations) {
      if (accept_stalled()) return unscale(res);
      res.status = SocpStatus::MaxIterations;
      break;
    }

    if (!compute_scaling(lay, s, z, W)) {
      if (accept_stalled()) return unscale(res);
      res.status = SocpStatus::NumericalError;
      break;
    }
    const Vec lambda = W.apply_W(lay, z);

    W.add_minus_W2(lay, n, kkt);
    lu.compute(kkt);

    // Static direction, shared by predictor and corrector.
    Vec rhs2(n + m);
    rhs2.head(n) = -prob.c;
    rhs2.tail(m) = prob.h;
    const Vec sol2 = kkt_solve(rhs2);
    const auto x2 = sol2.head(n);
    const auto z2 = sol2.tail(m);

    const Vec lam_lam = jordan_product(lay, lambda, lambda);

    auto newton = [&](double sigma, const Vec& ds_extra, double dkap_extra, Vec& dx, Vec& dz,
                      Vec& ds, double& dtau, double& dkappa) {
      // Complementarity targets.
      Vec ds_rhs = -lam_lam + ds_extra;
      if (sigma > 0.0) ds_rhs += sigma * mu * e;
      const double dkap_rhs = sigma * mu - tau * kappa + dkap_extra;

      const Vec bs = jordan_divide(lay, lambda, ds_rhs);
      const double scale = 1.0 - sigma;

      Vec rhs1(n + m);
      rhs1.head(n) = -scale * rx;
      rhs1.tail(m) = -scale * rz - W.apply_W(lay, bs);
      const Vec sol1 = kkt_solve(rhs1);
      const auto x1 = sol1.head(n);
      const auto z1 = sol1.tail(m);

      const double btau = -scale * rtau - dkap_rhs / tau;
      const double denom = prob.c.dot(x2) + prob.h.dot(z2) - kappa / tau;
      dtau = (btau - prob.c.dot(x1) - prob.h.dot(z1)) / denom;
      dx = x1 + dtau * x2;
      dz = z1 + dtau * z2;
      // Recover ds and dkappa from the primal and gap equations rather than
      // the scaled complementarity: keeps the feasibility recursions exact
      // even when W^2 is severely ill-conditioned near the optimum.
      ds = -scale * rz - prob.G * dx + prob.h * dtau;
      dkappa = -scale * rtau - prob.c.dot(dx) - prob.h.dot(dz);
    };

    // Predictor (affine direction).
    Vec dxa(n), dza(m), dsa(m);
    double dtaua = 0.0, dkappaa = 0.0;
    newton(0.0, Vec::Zero(m), 0.0, dxa, dza, dsa, dtaua, dkappaa);

    double alpha_aff = std::min({max_step(lay, s, dsa), max_step(lay, z, dza),
                                 dtaua < 0.0 ? -tau / dtaua : kInf,
                                 dkappaa < 0.0 ? -kappa / dkappaa : kInf, 1.0});
    if (!std::isfinite(alpha_aff) || alpha_aff < 0.0) alpha_aff = 0.0;

    const double mu_aff = ((s + alpha_aff * dsa).dot(z + alpha_aff * dza) +
                           (tau + alpha_aff * dtaua) * (kappa + alpha_aff * dkappaa)) /
                          (deg + 1.0);
    double sigma = std::pow(std::max(0.0, mu_aff / mu), 3.0);
    sigma = std::clamp(sigma, 0.0, 0.999);

    // Corrector with Mehrotra second-order term.
    const Vec corr = jordan_product(lay, W.apply_Winv(lay, dsa), W.apply_W(lay, dza));
    Vec dx(n), dz(m), ds(m);
    double dtau = 0.0, dkappa = 0.0;
    newton(sigma, Vec(-corr), -dtaua * dkappaa, dx, dz, ds, dtau, dkappa);

    auto step_of = [&](const Vec& dss, const Vec& dzz, double dtt, double dkk) {
      const double a = std::min({max_step(lay, s, dss), max_step(lay, z, dzz),
                                 dtt < 0.0 ? -tau / dtt : kInf,
                                 dkk < 0.0 ? -kappa / dkk : kInf});
      return std::min(1.0, opts.step_fraction * a);
    };
    double alpha = step_of(ds, dz, dtau, dkappa);
    if (alpha < 5e-3) {
      // A cone corner is jamming the combined direction; take a plain
      // centering step instead.
      newton(0.8, Vec::Zero(m), 0.0, dx, dz, ds, dtau, dkappa);
      alpha = step_of(ds, dz, dtau, dkappa);
    }
    if (!std::isfinite(alpha) || alpha <= 1e-14) {
      if (accept_stalled()) return unscale(res);
      res.status = SocpStatus::NumericalError;
      break;
    }

    x += alpha * dx;
    z += alpha * dz;
    s += alpha * ds;
    tau += alpha * dtau;
    kappa += alpha * dkappa;

    // The embedding is homogeneous: renormalize so tau (or kappa, on the
    // infeasibility branch) stays near 1, which keeps the attainable
    // complementarity floor at machine precision.
    const double rho = std::max(tau, kappa);
    if (rho > 0.0 && (rho < 0.5 || rho > 2.0)) {
      x /= rho;
      z /= rho;
      s /= rho;
      tau /= rho;
      kappa /= rho;
    }
  }

  if (res.status != SocpStatus::MaxIterations && res.status != SocpStatus::NumericalError)
    res.status = SocpStatus::NumericalError;
  return unscale(res);
}

}  // namespace rsma::socp
