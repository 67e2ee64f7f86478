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
#include "rsma/strategies.hpp"

namespace rsma::region {

/// The two-user WSR weight sweep: u1 = 1, u2 = 10^e with
/// e in {-3} U {-1.00, -0.95, ..., 0.95, 1.00} U {3}; 43 vectors.
std::vector<Eigen::VectorXd> weight_grid();

/// Deterministic channel of a scenario, power budget filled in.
ChannelSet scenario_channel(const Scenario& s);

struct RegionPoint {
  Eigen::VectorXd weights;
  ao::AoStatus status = ao::AoStatus::NumericalFailure;
  std::optional<Solution> solution;
  std::optional<Eigen::Index> scsic_first;
  std::string lineage;
  double r1 = 0.0;  // user-1 total unicast rate
  double r2 = 0.0;  // user-2 total unicast rate
  double wsr = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct RateRegionResult {
  Strategy strategy = Strategy::Rs;
  Scenario scenario;
  std::vector<RegionPoint> points;          // one per weight vector, in grid order
  std::vector<std::size_t> pareto_frontier; // indexes of non-dominated points, by r1
};

/// Indexes of the non-dominated points (both rates maximized), sorted by r1.
/// Invariant to the processing order of the points.
std::vector<std::size_t> pareto_frontier(const std::vector<RegionPoint>& points);

/// Sweeps scenario.weight_grid for scenario.strategy. K = 2 only. Failed
/// points are retained with their status; all-failed raises scenario
/// infeasibility via a zero-point frontier and status flags.
RateRegionResult sweep(const ChannelSet& ch, const Scenario& scenario,
                       const ao::AoConfig& config, int parallelism = 1,
                       bool cross_warm_start = true);

/// Sweeps several strategies sharing per-weight work (MU-LP and SC-SIC
/// outcomes warm-start RS). Results are returned in the order requested.
std::vector<RateRegionResult> sweep_all(const ChannelSet& ch, const Scenario& base,
                                        const std::vector<Strategy>& strategies,
                                        const ao::AoConfig& config, int parallelism = 1,
                                        bool cross_warm_start = true);

/// Per-weight WSR table for general K (no 2-D region structure).
struct WsrTableRow {
  Eigen::VectorXd weights;
  ao::AoStatus status;
  double wsr;
};
std::vector<WsrTableRow> wsr_table(const ChannelSet& ch, Strategy strategy, double r0_threshold,
                                   const std::vector<Eigen::VectorXd>& weight_grid,
                                   const ao::AoConfig& config, int parallelism = 1);

struct DominanceReport {
  std::vector<double> wsr_delta;  // wsr(a) - wsr(b) per weight; NaN if not comparable
  double min_delta = 0.0;
  double max_delta = 0.0;
  int comparable = 0;
  bool b_ok_where_a_failed = false;
  bool frontier_contains_b = false;  // staircase containment within tolerance
  bool hull_contains_b = false;      // convex-hull secondary metric
};

/// Compares two region results over the same scenario (strategy may
/// differ). Throws on mismatched scenarios.
DominanceReport region_dominance(const RateRegionResult& a, const RateRegionResult& b,
                                 double tol = 1e-5);

struct OracleGrid {
  int power_steps = 10;  // simplex resolution for per-column powers
  int angle_steps = 5;   // polar angle steps in [0, pi/2]
  int phase_steps = 8;   // relative phase steps in [0, 2pi)
};

/// Exhaustive feasible-point maximum over precoders with columns
/// sqrt(q) * (cos a, sin a * e^{jb}) on the given grid, with the common-rate
/// split optimized exactly per candidate. A certified lower bound on the
/// optimum. Tiny instances only (Nt <= 2, K <= 2); throws otherwise.
double brute_force_oracle(const ChannelSet& ch, Strategy strategy, double r0_threshold,
                          const Eigen::VectorXd& wsr_weights, const OracleGrid& grid);

/// Exact best-split WSR of one candidate precoder (the oracle's scorer).
/// nullopt when the QoS threshold is unattainable at this precoder.
std::optional<double> score_precoder(const ChannelSet& ch, Strategy strategy,
                                     Eigen::Index scsic_first, double r0_threshold,
                                     const Eigen::VectorXd& wsr_weights, const PrecoderMatrix& p);

}  // namespace rsma::region
