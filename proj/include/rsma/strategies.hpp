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

#include "rsma/ao.hpp"
#include "rsma/core.hpp"

namespace rsma::strategies {

struct StrategyOutcome {
  Strategy strategy = Strategy::Rs;
  ao::AoStatus status = ao::AoStatus::NumericalFailure;
  std::optional<Solution> solution;
  std::optional<Eigen::Index> scsic_first;  // winning decoding order (SC-SIC)
  std::string warm_start_lineage;           // provenance of the winning restart
};

/// One strategy on one weight vector. MU-LP runs a single restart set;
/// SC-SIC enumerates both decoding orders (K = 2) and keeps the better; RS
/// adds warm starts lifted from any outcomes passed in `warm_sources`.
StrategyOutcome solve_strategy(const ChannelSet& ch, Strategy strategy, double r0_threshold,
                               const Eigen::VectorXd& wsr_weights, const ao::AoConfig& config,
                               const std::vector<StrategyOutcome>& warm_sources = {});

/// All requested strategies with work sharing: MU-LP and SC-SIC first, then
/// RS warm-started from both (when cross_warm_start is set). Returned in the
/// order given.
std::vector<StrategyOutcome> solve_all(const ChannelSet& ch,
                                       const std::vector<Strategy>& strategies,
                                       double r0_threshold, const Eigen::VectorXd& wsr_weights,
                                       const ao::AoConfig& config, bool cross_warm_start = true);

/// A feasible MU-LP solution is RS-feasible as-is: zero common-rate shares,
/// same precoder, same WSR.
Solution lift_mulp_to_rs(const Solution& sol);

/// An SC-SIC solution maps to an RS point with the first-decoded user's
/// private column zero and its whole unicast rate carried on the common
/// stream. WSR is preserved.
Solution lift_scsic_to_rs(const StrategyOutcome& outcome);

}  // namespace rsma::strategies
