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
// Alternating optimization: at iteration n the equalizers and MSE weights
// are set to their closed forms at P^{n-1}, then (x, P) are updated by the
// convex subproblem. The reported WSR always comes from the exact rate
// expressions with c = -x, never the WMMSE surrogate. Because the base-2
// weight update is not an exact minimizer of the surrogate (see wmmse), a
// candidate iterate whose exact WSR is lower than the incumbent is rejected
// and the run is declared converged; traces are therefore non-decreasing by
// construction. The common-rate vector is clipped into the exact-rate
// budget before it is reported.

#include "rsma/ao.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <ostream>

#include "rsma/detail/rng.hpp"
#include "rsma/rates.hpp"
#include "rsma/subproblem.hpp"
#include "rsma/wmmse.hpp"

namespace rsma::ao {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<Eigen::Index> share_users(Strategy strategy, Eigen::Index scsic_first,
                                      Eigen::Index num_users) {
  std::vector<Eigen::Index> users;
  switch (strategy) {
    case Strategy::Rs:
      for (Eigen::Index k = 0; k < num_users; ++k) users.push_back(k);
      break;
    case Strategy::Mulp:
      break;
    case Strategy::Scsic:
      users.push_back(scsic_first);
      break;
  }
  return users;
}

std::vector<Eigen::Index> active_private_columns(Strategy strategy, Eigen::Index scsic_first,
                                                 Eigen::Index num_users) {
  std::vector<Eigen::Index> cols;
  for (Eigen::Index k = 0; k < num_users; ++k)
    if (strategy != Strategy::Scsic || k != scsic_first) cols.push_back(k);
  return cols;
}

double weighted_total(const RateReport& report, const CommonRateAllocation& c,
                      const Eigen::VectorXd& w) {
  double total = 0.0;
  for (Eigen::Index k = 0; k < w.size(); ++k)
    total += w(k) * (c.ck0[static_cast<size_t>(k)] + report.private_rates[static_cast<size_t>(k)]);
  return total;
}

// Clips c = -x into the exact-rate common budget min_k R_{k,0}. With
// require_qos the QoS floor must fit (else nullopt); without it c0 is
// simply capped by the budget (used for the algorithm's running WSR, where
// a transient exact-rate shortfall below the floor is tolerated).
std::optional<CommonRateAllocation> clip_allocation(const Eigen::VectorXd& x,
                                                    const RateReport& report, double r0th,
                                                    Eigen::Index num_users, bool require_qos) {
  const double budget = report.common_rate;
  if (require_qos && budget < r0th - 1e-7) return std::nullopt;
  double c0 = std::min(std::max(r0th, -x(0)), budget);
  if (!require_qos) c0 = std::max(0.0, c0);
  std::vector<double> shares(static_cast<size_t>(num_users), 0.0);
  double total = 0.0;
  for (Eigen::Index k = 0; k < num_users; ++k) {
    shares[static_cast<size_t>(k)] = std::max(0.0, -x(k + 1));
    total += shares[static_cast<size_t>(k)];
  }
  const double avail = budget - c0;
  if (total > avail) {
    const double scale = total > 0.0 ? avail / total : 0.0;
    for (double& s : shares) s *= scale;
  }
  return CommonRateAllocation(c0, std::move(shares));
}

double allocation_residual(const ChannelSet& ch, const PrecoderMatrix& p,
                           const CommonRateAllocation& c, const RateReport& report, double r0th) {
  double r = std::max(0.0, p.total_power() - ch.power_budget());
  r = std::max(r, c.total() - report.common_rate);
  r = std::max(r, r0th - c.c0);
  return r;
}

struct RunOutcome {
  AoStatus status = AoStatus::NumericalFailure;
  std::optional<Solution> solution;
  std::vector<double> trace;
};

// The chain follows Algorithm 1 exactly: (u, g) from the previous precoder,
// then the convex update, stop when the running WSR stabilizes. The returned
// solution is the best iterate that satisfies the original constraints on
// exact rates (the base-2 weight update makes the surrogate an imperfect
// minorant, so mid-flight iterates can transiently dip or leave the QoS
// floor by a sliver); its trace is non-decreasing by construction.
RunOutcome run_single(const ChannelSet& ch, Strategy strategy, Eigen::Index scsic_first,
                      double r0th, const Eigen::VectorXd& w, const AoConfig& config,
                      PrecoderMatrix p) {
  const Eigen::Index K = ch.num_users();
  const auto shares = share_users(strategy, scsic_first, K);

  RunOutcome out;

  struct Incumbent {
    PrecoderMatrix p;
    CommonRateAllocation c;
    RateReport report;
    double wsr = -kInf;
  };
  std::optional<Incumbent> best;
  std::vector<double> trace;
  std::vector<double> residuals;

  double chain_wsr_prev = -kInf;
  {
    const RateReport rep0 = rates::rate_report(ch, p);
    if (auto split = best_common_split(rep0, w, r0th, shares)) {
      best = Incumbent{p, *split, rep0, weighted_total(rep0, *split, w)};
      chain_wsr_prev = best->wsr;
      trace.push_back(best->wsr);
      residuals.push_back(allocation_residual(ch, p, *split, rep0, r0th));
    }
  }

  bool converged = false;
  int iterations = 0;
  for (int n = 1; n <= config.max_iterations; ++n) {
    subproblem::SubproblemSpec spec{ch,   w,    wmmse::mmse_state(ch, p),
                                    r0th, ch.power_budget(), strategy, scsic_first};
    const auto sub = subproblem::solve(subproblem::build_subproblem(spec), config.solver);
    if (sub.status != subproblem::SubproblemStatus::Optimal) {
      if (best) break;  // the chain died, but a verified feasible iterate stands
      out.status = sub.status == subproblem::SubproblemStatus::Infeasible && n == 1
                       ? AoStatus::Infeasible
                       : AoStatus::NumericalFailure;
      out.trace = trace;
      return out;
    }
    iterations = n;
    p = sub.precoder;

    const RateReport rep = rates::rate_report(ch, p);
    const auto c_relaxed = clip_allocation(sub.x, rep, r0th, K, /*require_qos=*/false);
    const double chain_wsr = weighted_total(rep, *c_relaxed, w);

    if (auto c_strict = clip_allocation(sub.x, rep, r0th, K, /*require_qos=*/true)) {
      const double wsr = weighted_total(rep, *c_strict, w);
      if (!best || wsr >= best->wsr) best = Incumbent{p, *c_strict, rep, wsr};
    }
    if (best) {
      trace.push_back(best->wsr);
      residuals.push_back(allocation_residual(ch, best->p, best->c, best->report, r0th));
    }

    // The stop rule only ends a run that has produced a feasible iterate;
    // chains approaching the QoS boundary from outside keep going until one
    // lands inside.
    if (best && std::isfinite(chain_wsr_prev) &&
        std::abs(chain_wsr - chain_wsr_prev) <= config.epsilon) {
      converged = true;
      break;
    }
    chain_wsr_prev = chain_wsr;
  }

  if (!best) {
    out.status = AoStatus::NumericalFailure;
    out.trace = trace;
    return out;
  }

  Solution sol;
  sol.precoder = best->p;
  sol.common_rates = best->c;
  sol.report = rates::rate_report(ch, best->p, best->c);
  sol.wsr = best->wsr;
  sol.trace = std::move(trace);
  sol.trace_residuals = std::move(residuals);
  sol.iterations = iterations;
  sol.converged = converged;
  out.status = AoStatus::Ok;
  out.solution = std::move(sol);
  return out;
}

}  // namespace

void AoConfig::validate() const {
  if (!(epsilon > 0.0)) throw std::invalid_argument("AoConfig: epsilon must be > 0");
  if (max_iterations < 1) throw std::invalid_argument("AoConfig: max_iterations must be >= 1");
  if (restarts < 1) throw std::invalid_argument("AoConfig: restarts must be >= 1");
  if (warm_labels.size() != warm_starts.size())
    throw std::invalid_argument("AoConfig: warm start labels must match warm starts");
}

const char* to_string(AoStatus s) {
  switch (s) {
    case AoStatus::Ok: return "ok";
    case AoStatus::Infeasible: return "infeasible";
    case AoStatus::NumericalFailure: return "numerical_failure";
  }
  return "unknown";
}

PrecoderMatrix init_precoders(const ChannelSet& ch, Strategy strategy, Eigen::Index scsic_first,
                              InitMethod method, std::uint64_t seed, double power_budget,
                              double r0_threshold) {
  const Eigen::Index nt = ch.num_antennas();
  const Eigen::Index K = ch.num_users();
  const auto actives = active_private_columns(strategy, scsic_first, K);
  double t = r0_threshold > 0.0 ? 0.5 : 0.1;
  if (actives.empty()) t = 1.0;
  const double private_power = actives.empty() ? 0.0 : (1.0 - t) * power_budget / actives.size();

  CMatrix m = CMatrix::Zero(nt, K + 1);
  if (method == InitMethod::MrtSvd) {
    CMatrix stacked(nt, K);
    for (Eigen::Index k = 0; k < K; ++k) stacked.col(k) = ch.channel(k);
    Eigen::JacobiSVD<CMatrix> svd(stacked, Eigen::ComputeThinU);
    CVector v = svd.matrixU().col(0);
    Eigen::Index peak = 0;
    v.cwiseAbs().maxCoeff(&peak);
    v *= std::conj(v(peak)) / std::abs(v(peak));  // deterministic phase
    m.col(0) = std::sqrt(t * power_budget) * v;
    for (Eigen::Index k : actives)
      m.col(k + 1) = std::sqrt(private_power) * ch.channel(k).normalized();
  } else {
    detail::ComplexGaussianSource src(seed);
    auto random_unit = [&](Eigen::Index len) {
      CVector v(len);
      for (Eigen::Index i = 0; i < len; ++i) v(i) = src.next();
      return CVector(v.normalized());
    };
    m.col(0) = std::sqrt(t * power_budget) * random_unit(nt);
    for (Eigen::Index k : actives) m.col(k + 1) = std::sqrt(private_power) * random_unit(nt);
  }
  return PrecoderMatrix(std::move(m));
}

std::optional<CommonRateAllocation> best_common_split(const RateReport& report,
                                                      const Eigen::VectorXd& wsr_weights,
                                                      double r0_threshold,
                                                      const std::vector<Eigen::Index>& share_users) {
  const double budget = report.common_rate;
  if (budget < r0_threshold - 1e-7) return std::nullopt;
  const size_t K = report.common_rate_per_user.size();
  std::vector<double> shares(K, 0.0);
  const double c0 = std::min(r0_threshold, budget);
  const double avail = std::max(0.0, budget - c0);
  if (!share_users.empty()) {
    Eigen::Index best = share_users.front();
    for (Eigen::Index k : share_users)
      if (wsr_weights(k) > wsr_weights(best)) best = k;
    shares[static_cast<size_t>(best)] = avail;
  }
  return CommonRateAllocation(c0, std::move(shares));
}

OptimizeResult optimize(const ChannelSet& ch, Strategy strategy, Eigen::Index scsic_first,
                        double r0_threshold, const Eigen::VectorXd& wsr_weights,
                        const AoConfig& config) {
  config.validate();
  if (wsr_weights.size() != ch.num_users())
    throw std::invalid_argument("optimize: wsr_weights must have one entry per user");
  if (!(wsr_weights.minCoeff() > 0.0))
    throw std::invalid_argument("optimize: wsr_weights must be strictly positive");
  if (!(r0_threshold >= 0.0)) throw std::invalid_argument("optimize: r0_threshold must be >= 0");
  if (strategy == Strategy::Scsic && (scsic_first < 0 || scsic_first >= ch.num_users()))
    throw std::invalid_argument("optimize: SC-SIC decoding order out of range");

  struct Attempt {
    PrecoderMatrix p;
    std::string label;
  };
  std::vector<Attempt> attempts;
  attempts.push_back({init_precoders(ch, strategy, scsic_first, InitMethod::MrtSvd, 0,
                                     ch.power_budget(), r0_threshold),
                      "mrt_svd"});
  for (int i = 1; i < config.restarts; ++i)
    attempts.push_back(
        {init_precoders(ch, strategy, scsic_first, InitMethod::Random,
                        detail::mix_seed(config.seed, static_cast<std::uint64_t>(i)),
                        ch.power_budget(), r0_threshold),
         "random:" + std::to_string(i)});
  for (size_t wi = 0; wi < config.warm_starts.size(); ++wi) {
    PrecoderMatrix p = config.warm_starts[wi].precoder;
    if (strategy == Strategy::Scsic) {  // enforce the structural zero column
      CMatrix m = p.matrix();
      m.col(scsic_first + 1).setZero();
      p = PrecoderMatrix(std::move(m));
    }
    attempts.push_back({std::move(p), config.warm_labels[wi]});
  }

  OptimizeResult result;
  int best_index = -1;
  bool any_infeasible = false;
  for (size_t a = 0; a < attempts.size(); ++a) {
    RunOutcome run = run_single(ch, strategy, scsic_first, r0_threshold, wsr_weights, config,
                                attempts[a].p);
    if (run.status == AoStatus::Ok) {
      const Solution& cand = *run.solution;
      const bool better =
          best_index < 0 || cand.wsr > result.solution->wsr ||
          (cand.wsr == result.solution->wsr && cand.iterations < result.solution->iterations);
      if (better) {
        result.solution = std::move(run.solution);
        result.winning_init = attempts[a].label;
        best_index = static_cast<int>(a);
      }
    } else {
      if (run.status == AoStatus::Infeasible) any_infeasible = true;
      if (result.partial_trace.empty()) result.partial_trace = std::move(run.trace);
    }
  }
  if (result.solution)
    result.status = AoStatus::Ok;
  else
    result.status = any_infeasible ? AoStatus::Infeasible : AoStatus::NumericalFailure;
  return result;
}

double wsr_of(const Solution& sol, const Eigen::VectorXd& wsr_weights) {
  double total = 0.0;
  for (Eigen::Index k = 0; k < wsr_weights.size(); ++k)
    total += wsr_weights(k) * sol.report.total_unicast_rates.at(static_cast<size_t>(k));
  return total;
}

void write_trace_csv(const Solution& sol, std::ostream& os) {
  os << "iteration,wsr,residual\n";
  for (size_t i = 0; i < sol.trace.size(); ++i) {
    const double resid = i < sol.trace_residuals.size() ? sol.trace_residuals[i] : 0.0;
    os << i << "," << sol.trace[i] << "," << resid << "\n";
  }
}

}  // namespace rsma::ao
