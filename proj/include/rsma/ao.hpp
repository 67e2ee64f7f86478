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

#include <iosfwd>
#include <optional>
#include <string>

#include "rsma/core.hpp"
#include "rsma/socp.hpp"

namespace rsma::ao {

enum class InitMethod { MrtSvd, Random };

struct AoConfig {
  double epsilon = 1e-4;   // stop when |WSR_n - WSR_{n-1}| <= epsilon
  int max_iterations = 300;
  int restarts = 3;        // MrtSvd plus (restarts - 1) random initializations
  std::uint64_t seed = 1;  // base seed for the random restarts
  socp::SocpOptions solver;

  // Additional restarts seeded from existing solutions (strategy lifts);
  // labels are recorded as the winning restart's lineage.
  std::vector<Solution> warm_starts;
  std::vector<std::string> warm_labels;

  void validate() const;
};

enum class AoStatus { Ok, Infeasible, NumericalFailure };

const char* to_string(AoStatus s);

struct OptimizeResult {
  AoStatus status = AoStatus::NumericalFailure;
  std::optional<Solution> solution;
  std::string winning_init;          // "mrt_svd", "random:<i>", or a warm label
  std::vector<double> partial_trace; // trace gathered before a failure
};

/// Deterministic initial precoder with tr(PP^H) = power_budget exactly.
/// MrtSvd: private columns are matched filters sharing (1-t)*Pt equally,
/// the common column is sqrt(t*Pt) times the dominant left singular vector
/// of the stacked channel matrix; t = 0.5 when r0_threshold > 0, else 0.1.
/// Random: CN(0,1) columns rescaled to the same power split. For SC-SIC the
/// first-decoded user's private column is identically zero.
PrecoderMatrix init_precoders(const ChannelSet& ch, Strategy strategy, Eigen::Index scsic_first,
                              InitMethod method, std::uint64_t seed, double power_budget,
                              double r0_threshold);

/// Alternating optimization: closed-form MMSE equalizer/weight updates
/// against the convex precoder subproblem until the WSR stabilizes. Runs
/// all configured restarts and returns the best solution (highest WSR, then
/// fewest iterations, then lowest restart index). The power budget is taken
/// from the channel set.
OptimizeResult optimize(const ChannelSet& ch, Strategy strategy, Eigen::Index scsic_first,
                        double r0_threshold, const Eigen::VectorXd& wsr_weights,
                        const AoConfig& config);

/// Weighted sum of total unicast rates, sum_k w_k R_{k,tot}.
double wsr_of(const Solution& sol, const Eigen::VectorXd& wsr_weights);

/// Best common-rate split for a fixed precoder: C0 = r0_threshold, the
/// remaining min_k R_{k,0} - r0_threshold assigned to the highest-weight
/// user among share_users. Returns nullopt when the threshold is not met.
std::optional<CommonRateAllocation> best_common_split(const RateReport& report,
                                                      const Eigen::VectorXd& wsr_weights,
                                                      double r0_threshold,
                                                      const std::vector<Eigen::Index>& share_users);

/// Per-iteration trace as CSV (columns: iteration, wsr).
void write_trace_csv(const Solution& sol, std::ostream& os);

}  // namespace rsma::ao
