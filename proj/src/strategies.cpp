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

#include "rsma/strategies.hpp"

#include <algorithm>

#include "rsma/rates.hpp"

namespace rsma::strategies {

namespace {

StrategyOutcome run_scsic(const ChannelSet& ch, double r0th, const Eigen::VectorXd& w,
                          const ao::AoConfig& config) {
  const Eigen::Index K = ch.num_users();
  if (K > 2) throw std::invalid_argument("solve_strategy: SC-SIC requires K <= 2");

  StrategyOutcome best;
  best.strategy = Strategy::Scsic;
  bool any_infeasible = false;
  for (Eigen::Index first = 0; first < K; ++first) {
    auto r = ao::optimize(ch, Strategy::Scsic, first, r0th, w, config);
    if (r.status != ao::AoStatus::Ok) {
      any_infeasible |= r.status == ao::AoStatus::Infeasible;
      continue;
    }
    if (!best.solution || r.solution->wsr > best.solution->wsr) {
      best.status = ao::AoStatus::Ok;
      best.solution = std::move(r.solution);
      best.scsic_first = first;
      best.warm_start_lineage = r.winning_init;
    }
  }
  if (!best.solution)
    best.status = any_infeasible ? ao::AoStatus::Infeasible : ao::AoStatus::NumericalFailure;
  return best;
}

}  // namespace

StrategyOutcome solve_strategy(const ChannelSet& ch, Strategy strategy, double r0_threshold,
                               const Eigen::VectorXd& wsr_weights, const ao::AoConfig& config,
                               const std::vector<StrategyOutcome>& warm_sources) {
  if (strategy == Strategy::Scsic) return run_scsic(ch, r0_threshold, wsr_weights, config);

  ao::AoConfig cfg = config;
  if (strategy == Strategy::Rs) {
    for (const auto& src : warm_sources) {
      if (!src.solution) continue;
      switch (src.strategy) {
        case Strategy::Mulp:
          cfg.warm_starts.push_back(lift_mulp_to_rs(*src.solution));
          cfg.warm_labels.push_back("warm:mulp");
          break;
        case Strategy::Scsic: {
          cfg.warm_starts.push_back(lift_scsic_to_rs(src));
          cfg.warm_labels.push_back(
              "warm:scsic(first=" +
              std::to_string(src.scsic_first.value_or(0)) + ")");
          break;
        }
        case Strategy::Rs:
          cfg.warm_starts.push_back(*src.solution);
          cfg.warm_labels.push_back("warm:rs");
          break;
      }
    }
  }

  auto r = ao::optimize(ch, strategy, 0, r0_threshold, wsr_weights, cfg);
  StrategyOutcome out;
  out.strategy = strategy;
  out.status = r.status;
  out.solution = std::move(r.solution);
  out.warm_start_lineage = r.winning_init;
  return out;
}

std::vector<StrategyOutcome> solve_all(const ChannelSet& ch,
                                       const std::vector<Strategy>& strategies,
                                       double r0_threshold, const Eigen::VectorXd& wsr_weights,
                                       const ao::AoConfig& config, bool cross_warm_start) {
  const bool wants_rs =
      std::find(strategies.begin(), strategies.end(), Strategy::Rs) != strategies.end();

  std::vector<StrategyOutcome> warm_sources;
  auto outcome_of = [&](Strategy st) {
    return solve_strategy(ch, st, r0_threshold, wsr_weights, config, {});
  };

  std::optional<StrategyOutcome> mulp, scsic;
  for (Strategy st : strategies) {
    if (st == Strategy::Mulp) mulp = outcome_of(st);
    if (st == Strategy::Scsic) scsic = outcome_of(st);
  }
  if (wants_rs && cross_warm_start) {
    if (!mulp) mulp = outcome_of(Strategy::Mulp);
    if (!scsic && ch.num_users() <= 2) scsic = outcome_of(Strategy::Scsic);
  }
  if (mulp) warm_sources.push_back(*mulp);
  if (scsic) warm_sources.push_back(*scsic);

  std::vector<StrategyOutcome> out;
  for (Strategy st : strategies) {
    switch (st) {
      case Strategy::Mulp:
        out.push_back(*mulp);
        break;
      case Strategy::Scsic:
        out.push_back(*scsic);
        break;
      case Strategy::Rs:
        out.push_back(solve_strategy(ch, Strategy::Rs, r0_threshold, wsr_weights, config,
                                     cross_warm_start ? warm_sources
                                                      : std::vector<StrategyOutcome>{}));
        break;
    }
  }
  return out;
}

Solution lift_mulp_to_rs(const Solution& sol) {
  Solution lifted = sol;
  std::fill(lifted.common_rates.ck0.begin(), lifted.common_rates.ck0.end(), 0.0);
  for (size_t k = 0; k < lifted.report.total_unicast_rates.size(); ++k)
    lifted.report.total_unicast_rates[k] = lifted.report.private_rates[k];
  return lifted;
}

Solution lift_scsic_to_rs(const StrategyOutcome& outcome) {
  if (!outcome.solution || outcome.strategy != Strategy::Scsic)
    throw std::invalid_argument("lift_scsic_to_rs: needs a solved SC-SIC outcome");
  if (outcome.solution->precoder.num_users() > 2)
    throw std::invalid_argument("lift_scsic_to_rs: K must be <= 2");
  // The SC-SIC solution is stored in RS form already: p_i = 0 and C_{i,0}
  // carries user i's whole unicast rate. Copy and retag.
  return *outcome.solution;
}

}  // namespace rsma::strategies
