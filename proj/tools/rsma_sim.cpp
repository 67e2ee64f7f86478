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

#include <CLI11.hpp>
#include <iostream>

#include "rsma/experiment.hpp"

using namespace rsma;

int main(int argc, char** argv) {
  CLI::App app{"rsma-sim: precoder optimization and rate-region sweeps for joint "
               "unicast/multicast downlink (RS, MU-LP, SC-SIC)"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;
  int parallelism = -1;
  long seed = -1;
  double epsilon = -1.0;
  int max_iter = -1;

  auto add_overrides = [&](CLI::App* cmd) {
    cmd->add_option("--parallelism", parallelism, "worker threads (0 = hardware)");
    cmd->add_option("--seed", seed, "base seed override");
    cmd->add_option("--epsilon", epsilon, "AO convergence tolerance override");
    cmd->add_option("--max-iter", max_iter, "AO iteration cap override");
    cmd->add_option("--output-dir", output_dir, "output directory override");
  };

  auto* run_cmd = app.add_subcommand("run", "execute all scenario sweeps from a config file");
  run_cmd->add_option("config", config_path, "experiment config file")->required();
  add_overrides(run_cmd);

  auto* plot_cmd =
      app.add_subcommand("plot-data", "emit Pareto-frontier tables from region JSON files");
  std::vector<std::string> region_files;
  plot_cmd->add_option("files", region_files, "region_*.json files sharing one scenario")
      ->required();
  plot_cmd->add_option("--output-dir", output_dir, "output directory (default: alongside input)");

  auto* verify_cmd = app.add_subcommand("verify", "recheck all invariants of a region file");
  std::string verify_file;
  verify_cmd->add_option("file", verify_file, "region_*.json file")->required();

  auto* oracle_cmd =
      app.add_subcommand("oracle", "compare AO against the brute-force grid oracle");
  oracle_cmd->add_option("config", config_path, "tiny-instance config file")->required();
  add_overrides(oracle_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed() || oracle_cmd->parsed()) {
      experiment::ExperimentConfig cfg = experiment::parse_config_file(config_path);
      if (!output_dir.empty()) cfg.output_dir = output_dir;
      if (parallelism >= 0) cfg.parallelism = parallelism;
      if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
      if (epsilon > 0.0) cfg.ao.epsilon = epsilon;
      if (max_iter > 0) cfg.ao.max_iterations = max_iter;

      if (run_cmd->parsed()) {
        const auto stats = experiment::run(cfg);
        std::cout << "scenarios " << stats.scenarios << " (" << stats.infeasible_scenarios
                  << " infeasible), points " << stats.points_total << " (ok " << stats.points_ok
                  << ", infeasible " << stats.points_infeasible << ", failed "
                  << stats.points_failed << ")\n";
        return stats.exit_code;
      }
      return experiment::run_oracle(cfg);
    }
    if (plot_cmd->parsed()) {
      std::vector<std::filesystem::path> files(region_files.begin(), region_files.end());
      const std::filesystem::path out =
          output_dir.empty() ? files.front().parent_path() : std::filesystem::path(output_dir);
      return experiment::emit_plot_data(files, out);
    }
    if (verify_cmd->parsed()) return experiment::verify_region_file(verify_file);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return experiment::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return experiment::kExitConfigError;
  }
  return experiment::kExitOk;
}
