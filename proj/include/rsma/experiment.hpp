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
// Batch front-end: config ingestion, experiment execution, persistence and
// plot-data emission. Config files are INI-style key-value sections; angles
// accept rational multiples of pi ("pi/9", "2pi/9") to avoid decimal drift.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "rsma/ao.hpp"
#include "rsma/core.hpp"
#include "rsma/region.hpp"

namespace rsma::experiment {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes of the batch verbs.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitInfeasibleBudget = 2;
inline constexpr int kExitSolverFailureBudget = 3;

struct GridSpec {
  Eigen::Index nt = 4;
  double snr_db = 20.0;
  std::vector<double> gamma = {1.0};
  std::vector<double> theta;
  std::vector<std::string> theta_labels;  // filesystem-safe tokens, parallel to theta
  std::vector<double> r0_threshold = {0.5};
  std::vector<Strategy> strategies = {Strategy::Rs, Strategy::Mulp, Strategy::Scsic};
};

struct OracleSpec {
  Eigen::Index nt = 2;
  Eigen::Index num_users = 2;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  std::vector<double> r0_threshold = {0.0, 0.3};
  double snr_db = 10.0;
  Eigen::VectorXd weights = Eigen::VectorXd::Ones(2);
  Strategy strategy = Strategy::Rs;
  region::OracleGrid grid;
  double tolerance = 0.05;
};

struct ExperimentConfig {
  std::string name = "experiment";
  std::filesystem::path output_dir = "out";
  std::uint64_t seed = 1;
  int parallelism = 0;  // 0: hardware concurrency
  int max_infeasible_scenarios = 0;
  double max_solver_failure_rate = 0.01;
  bool write_traces = true;
  bool cross_warm_start = true;
  GridSpec grid;
  ao::AoConfig ao;
  OracleSpec oracle;
  std::string config_text;  // raw text, hashed into the manifest
};

/// "pi/9", "2pi/9", "0.5pi", "pi", or a plain decimal. Throws on junk.
double parse_angle(std::string_view token);

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig parse_config_file(const std::filesystem::path& path);

/// Scenario list from the grid (cartesian over gamma x theta x r0) with the
/// standard weight grid; tags are filesystem-safe scenario identifiers.
struct TaggedScenario {
  Scenario scenario;
  std::string tag;
};
std::vector<TaggedScenario> expand_scenarios(const ExperimentConfig& cfg);

struct RunStats {
  int exit_code = kExitOk;
  int scenarios = 0;
  int infeasible_scenarios = 0;
  long points_total = 0;
  long points_ok = 0;
  long points_infeasible = 0;
  long points_failed = 0;
  long ao_runs = 0;  // points times strategies actually solved
};

/// Executes every scenario x strategy sweep, writes per-scenario CSV/JSON
/// region files, per-run traces and a manifest. Idempotent given identical
/// config and seeds (CSV/JSON outputs are byte-identical across reruns).
RunStats run(const ExperimentConfig& cfg);

/// Region CSV for one strategy sweep (columns strategy,u1,u2,R1,R2,wsr,
/// iterations,status).
std::string region_csv(const region::RateRegionResult& r);

/// Pareto-frontier tables for plotting. All inputs must share a scenario
/// axis; emits one frontier_*.csv per input plus a combined table. Returns
/// an exit code.
int emit_plot_data(const std::vector<std::filesystem::path>& region_files,
                   const std::filesystem::path& output_dir);

/// Rechecks every invariant of a stored region file (rates, constraints,
/// traces, frontier). Returns an exit code.
int verify_region_file(const std::filesystem::path& file);

/// Compares AO against the brute-force oracle on the configured tiny
/// instances; prints one line per instance. Returns an exit code.
int run_oracle(const ExperimentConfig& cfg);

/// FNV-1a 64-bit, used for config identity in manifests.
std::uint64_t fnv1a64(std::string_view text);

/// Serialize then atomically rename into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace rsma::experiment
