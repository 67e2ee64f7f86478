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

#include "rsma/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <thread>

#include "rsma/channel.hpp"
#include "rsma/detail/rng.hpp"
#include "rsma/rates.hpp"
#include "rsma/serialize.hpp"
#include "rsma/subproblem.hpp"
#include "rsma/wmmse.hpp"

namespace rsma::experiment {

namespace {

namespace fs = std::filesystem;

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

using Section = std::map<std::string, std::string>;
using ConfigMap = std::map<std::string, Section>;

ConfigMap parse_sections(std::string_view text) {
  ConfigMap config;
  std::string current = "";
  std::stringstream ss{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": unterminated section header");
      current = trim(t.substr(1, t.size() - 2));
      config[current];
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    config[current][trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return config;
}

double to_double(const std::string& v, const std::string& key) {
  try {
    size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (trim(v.substr(pos)).empty()) return d;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("config key '" + key + "': not a number: '" + v + "'");
}

long to_long(const std::string& v, const std::string& key) {
  try {
    size_t pos = 0;
    const long d = std::stol(v, &pos);
    if (trim(v.substr(pos)).empty()) return d;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("config key '" + key + "': not an integer: '" + v + "'");
}

bool to_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("config key '" + key + "': not a boolean: '" + v + "'");
}

std::string sanitize_token(const std::string& token) {
  std::string out;
  for (char c : token) {
    if (std::isalnum(static_cast<unsigned char>(c)))
      out += c;
    else if (c == '/' || c == ' ')
      out += '_';
    else if (c == '.')
      out += 'p';
    else if (c == '-')
      out += 'm';
  }
  return out.empty() ? "x" : out;
}

std::string format_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string format_10g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

struct ScenarioStats {
  std::string tag;
  long ok = 0;
  long infeasible = 0;
  long failed = 0;
  double elapsed_ms = 0.0;
  bool scenario_infeasible = false;
  bool screen_passed = true;
};

}  // namespace

double parse_angle(std::string_view token) {
  const std::string t = trim(token);
  const auto pos = t.find("pi");
  if (pos == std::string::npos) {
    try {
      size_t end = 0;
      const double v = std::stod(t, &end);
      if (trim(t.substr(end)).empty()) return v;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("bad angle: '" + t + "'");
  }
  const std::string pre = trim(t.substr(0, pos));
  const std::string post = trim(t.substr(pos + 2));
  double num = 1.0;
  if (!pre.empty()) {
    if (pre == "-")
      num = -1.0;
    else
      num = to_double(pre, "angle");
  }
  double den = 1.0;
  if (!post.empty()) {
    if (post.front() != '/') throw std::invalid_argument("bad angle: '" + t + "'");
    den = to_double(trim(post.substr(1)), "angle");
    if (den == 0.0) throw std::invalid_argument("bad angle: division by zero in '" + t + "'");
  }
  return num * std::numbers::pi / den;
}

ExperimentConfig parse_config(std::string_view text) {
  const ConfigMap sections = parse_sections(text);
  ExperimentConfig cfg;
  cfg.config_text = std::string(text);

  auto get = [&](const std::string& section, const std::string& key) -> const std::string* {
    auto sit = sections.find(section);
    if (sit == sections.end()) return nullptr;
    auto kit = sit->second.find(key);
    return kit == sit->second.end() ? nullptr : &kit->second;
  };

  if (const auto* v = get("experiment", "name")) cfg.name = *v;
  if (const auto* v = get("experiment", "output_dir")) cfg.output_dir = *v;
  if (const auto* v = get("experiment", "seed"))
    cfg.seed = static_cast<std::uint64_t>(to_long(*v, "seed"));
  if (const auto* v = get("experiment", "parallelism"))
    cfg.parallelism = static_cast<int>(to_long(*v, "parallelism"));
  if (const auto* v = get("experiment", "max_infeasible_scenarios"))
    cfg.max_infeasible_scenarios = static_cast<int>(to_long(*v, "max_infeasible_scenarios"));
  if (const auto* v = get("experiment", "max_solver_failure_rate"))
    cfg.max_solver_failure_rate = to_double(*v, "max_solver_failure_rate");
  if (const auto* v = get("experiment", "write_traces"))
    cfg.write_traces = to_bool(*v, "write_traces");
  if (const auto* v = get("experiment", "cross_warm_start"))
    cfg.cross_warm_start = to_bool(*v, "cross_warm_start");

  if (const auto* v = get("grid", "nt")) cfg.grid.nt = to_long(*v, "nt");
  if (const auto* v = get("grid", "snr_db")) cfg.grid.snr_db = to_double(*v, "snr_db");
  if (const auto* v = get("grid", "gamma")) {
    cfg.grid.gamma.clear();
    for (const auto& g : split_list(*v)) cfg.grid.gamma.push_back(to_double(g, "gamma"));
  }
  if (const auto* v = get("grid", "theta")) {
    cfg.grid.theta.clear();
    cfg.grid.theta_labels.clear();
    for (const auto& th : split_list(*v)) {
      cfg.grid.theta.push_back(parse_angle(th));
      cfg.grid.theta_labels.push_back(sanitize_token(th));
    }
  }
  if (const auto* v = get("grid", "r0_threshold")) {
    cfg.grid.r0_threshold.clear();
    for (const auto& r : split_list(*v))
      cfg.grid.r0_threshold.push_back(to_double(r, "r0_threshold"));
  }
  if (const auto* v = get("grid", "strategies")) {
    cfg.grid.strategies.clear();
    for (const auto& s : split_list(*v)) cfg.grid.strategies.push_back(strategy_from_string(s));
  }

  if (const auto* v = get("ao", "epsilon")) cfg.ao.epsilon = to_double(*v, "epsilon");
  if (const auto* v = get("ao", "max_iterations"))
    cfg.ao.max_iterations = static_cast<int>(to_long(*v, "max_iterations"));
  if (const auto* v = get("ao", "restarts"))
    cfg.ao.restarts = static_cast<int>(to_long(*v, "restarts"));

  if (const auto* v = get("oracle", "nt")) cfg.oracle.nt = to_long(*v, "oracle nt");
  if (const auto* v = get("oracle", "seeds")) {
    cfg.oracle.seeds.clear();
    for (const auto& s : split_list(*v))
      cfg.oracle.seeds.push_back(static_cast<std::uint64_t>(to_long(s, "oracle seeds")));
  }
  if (const auto* v = get("oracle", "r0_threshold")) {
    cfg.oracle.r0_threshold.clear();
    for (const auto& r : split_list(*v))
      cfg.oracle.r0_threshold.push_back(to_double(r, "oracle r0_threshold"));
  }
  if (const auto* v = get("oracle", "snr_db")) cfg.oracle.snr_db = to_double(*v, "oracle snr_db");
  if (const auto* v = get("oracle", "strategy"))
    cfg.oracle.strategy = strategy_from_string(*v);
  if (const auto* v = get("oracle", "power_steps"))
    cfg.oracle.grid.power_steps = static_cast<int>(to_long(*v, "power_steps"));
  if (const auto* v = get("oracle", "angle_steps"))
    cfg.oracle.grid.angle_steps = static_cast<int>(to_long(*v, "angle_steps"));
  if (const auto* v = get("oracle", "phase_steps"))
    cfg.oracle.grid.phase_steps = static_cast<int>(to_long(*v, "phase_steps"));
  if (const auto* v = get("oracle", "tolerance"))
    cfg.oracle.tolerance = to_double(*v, "oracle tolerance");
  if (const auto* v = get("oracle", "weights")) {
    const auto items = split_list(*v);
    cfg.oracle.weights.resize(static_cast<Eigen::Index>(items.size()));
    for (size_t i = 0; i < items.size(); ++i)
      cfg.oracle.weights(static_cast<Eigen::Index>(i)) = to_double(items[i], "oracle weights");
  }

  if (cfg.parallelism < 0) throw std::invalid_argument("parallelism must be >= 0");
  cfg.ao.validate();
  return cfg;
}

ExperimentConfig parse_config_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::vector<TaggedScenario> expand_scenarios(const ExperimentConfig& cfg) {
  std::vector<TaggedScenario> out;
  if (cfg.grid.theta.empty()) return out;  // empty grid: a valid empty run
  const auto grid = region::weight_grid();
  for (double gamma : cfg.grid.gamma)
    for (size_t ti = 0; ti < cfg.grid.theta.size(); ++ti)
      for (double r0 : cfg.grid.r0_threshold) {
        Scenario s;
        s.nt = cfg.grid.nt;
        s.num_users = 2;
        s.snr_db = cfg.grid.snr_db;
        s.gamma = gamma;
        s.theta = cfg.grid.theta[ti];
        s.r0_threshold = r0;
        s.weight_grid = grid;
        const std::string tag = "g" + sanitize_token(format_g(gamma)) + "_t" +
                                cfg.grid.theta_labels[ti] + "_r" + sanitize_token(format_g(r0));
        out.push_back({std::move(s), tag});
      }
  return out;
}

std::string region_csv(const region::RateRegionResult& r) {
  std::string csv = "strategy,u1,u2,R1,R2,wsr,iterations,status\n";
  for (const auto& p : r.points) {
    csv += to_string(r.strategy);
    csv += ",";
    csv += format_10g(p.weights(0));
    csv += ",";
    csv += format_10g(p.weights(1));
    csv += ",";
    csv += format_10g(p.r1);
    csv += ",";
    csv += format_10g(p.r2);
    csv += ",";
    csv += format_10g(p.wsr);
    csv += ",";
    csv += std::to_string(p.iterations);
    csv += ",";
    csv += ao::to_string(p.status);
    csv += "\n";
  }
  return csv;
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

void write_file_atomic(const fs::path& path, std::string_view content) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, path);
}

RunStats run(const ExperimentConfig& cfg) {
  const auto scenarios = expand_scenarios(cfg);
  const int parallelism =
      cfg.parallelism > 0 ? cfg.parallelism
                          : std::max(1u, std::thread::hardware_concurrency());

  RunStats stats;
  std::vector<ScenarioStats> scenario_stats;
  const auto t_start = std::chrono::steady_clock::now();

  for (size_t si = 0; si < scenarios.size(); ++si) {
    const auto& [scen, tag] = scenarios[si];
    ScenarioStats st;
    st.tag = tag;
    const auto t0 = std::chrono::steady_clock::now();

    const ChannelSet ch = region::scenario_channel(scen);
    st.screen_passed =
        subproblem::passes_feasibility_screen(ch, ch.power_budget(), scen.r0_threshold);

    ao::AoConfig aocfg = cfg.ao;
    aocfg.seed = detail::mix_seed(cfg.seed, si);
    const auto results = region::sweep_all(ch, scen, cfg.grid.strategies, aocfg, parallelism,
                                           cfg.cross_warm_start);

    bool any_ok = false;
    for (const auto& r : results) {
      for (const auto& p : r.points) {
        ++stats.points_total;
        ++stats.ao_runs;
        switch (p.status) {
          case ao::AoStatus::Ok:
            ++stats.points_ok;
            ++st.ok;
            any_ok = true;
            break;
          case ao::AoStatus::Infeasible:
            ++stats.points_infeasible;
            ++st.infeasible;
            break;
          case ao::AoStatus::NumericalFailure:
            ++stats.points_failed;
            ++st.failed;
            break;
        }
      }
      const std::string stem = "region_" + tag + "_" + to_string(r.strategy);
      write_file_atomic(cfg.output_dir / (stem + ".csv"), region_csv(r));
      write_file_atomic(cfg.output_dir / (stem + ".json"), json(r).dump(1));
      if (cfg.write_traces) {
        std::string traces = "weight_index,iteration,wsr,residual\n";
        for (size_t wi = 0; wi < r.points.size(); ++wi) {
          if (!r.points[wi].solution) continue;
          const auto& sol = *r.points[wi].solution;
          for (size_t it = 0; it < sol.trace.size(); ++it) {
            traces += std::to_string(wi);
            traces += ",";
            traces += std::to_string(it);
            traces += ",";
            traces += format_10g(sol.trace[it]);
            traces += ",";
            traces += format_10g(it < sol.trace_residuals.size() ? sol.trace_residuals[it] : 0.0);
            traces += "\n";
          }
        }
        write_file_atomic(cfg.output_dir / ("traces_" + tag + ".csv"), traces);
      }
    }
    st.scenario_infeasible = !any_ok;
    if (st.scenario_infeasible) ++stats.infeasible_scenarios;
    ++stats.scenarios;
    st.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    scenario_stats.push_back(std::move(st));
  }

  // Manifest: everything needed to reproduce the numbers.
  json manifest;
  manifest["version"] = kVersion;
  manifest["name"] = cfg.name;
  char hashbuf[32];
  std::snprintf(hashbuf, sizeof(hashbuf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(cfg.config_text)));
  manifest["config_fnv1a64"] = hashbuf;
  manifest["config"] = cfg.config_text;
  manifest["random_generator"] = channel::random_generator_id();
  manifest["seed"] = cfg.seed;
  manifest["parallelism"] = parallelism;
  manifest["ao"] = {{"epsilon", cfg.ao.epsilon},
                    {"max_iterations", cfg.ao.max_iterations},
                    {"restarts", cfg.ao.restarts},
                    {"cross_warm_start", cfg.cross_warm_start}};
  manifest["solver"] = {{"feas_tol", cfg.ao.solver.feas_tol},
                        {"gap_tol_abs", cfg.ao.solver.gap_tol_abs},
                        {"gap_tol_rel", cfg.ao.solver.gap_tol_rel},
                        {"max_iterations", cfg.ao.solver.max_iterations}};
  manifest["weight_clamp_activations"] = wmmse::clamp_activations();
  json per_scenario = json::array();
  for (const auto& st : scenario_stats)
    per_scenario.push_back(json{{"tag", st.tag},
                                {"points_ok", st.ok},
                                {"points_infeasible", st.infeasible},
                                {"points_failed", st.failed},
                                {"scenario_infeasible", st.scenario_infeasible},
                                {"feasibility_screen_passed", st.screen_passed},
                                {"elapsed_ms", st.elapsed_ms}});
  manifest["scenarios"] = std::move(per_scenario);
  manifest["points_total"] = stats.points_total;
  manifest["points_ok"] = stats.points_ok;
  manifest["points_infeasible"] = stats.points_infeasible;
  manifest["points_failed"] = stats.points_failed;
  manifest["elapsed_ms"] =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t_start)
          .count();
  write_file_atomic(cfg.output_dir / "manifest.json", manifest.dump(1));

  if (stats.infeasible_scenarios > cfg.max_infeasible_scenarios)
    stats.exit_code = kExitInfeasibleBudget;
  else if (stats.points_total > 0 &&
           static_cast<double>(stats.points_failed) / stats.points_total >
               cfg.max_solver_failure_rate)
    stats.exit_code = kExitSolverFailureBudget;
  return stats;
}

int emit_plot_data(const std::vector<fs::path>& region_files, const fs::path& output_dir) {
  if (region_files.empty()) {
    std::cerr << "plot-data: no input files\n";
    return kExitConfigError;
  }
  std::vector<region::RateRegionResult> results;
  for (const auto& f : region_files) {
    std::ifstream in(f);
    if (!in) {
      std::cerr << "plot-data: cannot open " << f << "\n";
      return kExitConfigError;
    }
    json j;
    in >> j;
    region::RateRegionResult r;
    region::from_json(j, r);
    results.push_back(std::move(r));
  }
  // All inputs must share the scenario axis.
  for (size_t i = 1; i < results.size(); ++i) {
    const auto& a = results[0].scenario;
    const auto& b = results[i].scenario;
    if (a.nt != b.nt || a.snr_db != b.snr_db || a.gamma != b.gamma || a.theta != b.theta ||
        a.r0_threshold != b.r0_threshold) {
      std::cerr << "plot-data: mixed scenarios across inputs\n";
      return kExitConfigError;
    }
  }

  size_t max_len = 0;
  std::vector<std::string> names;
  std::vector<std::vector<std::pair<double, double>>> frontiers;
  for (const auto& r : results) {
    std::vector<std::pair<double, double>> f;
    for (std::size_t i : r.pareto_frontier) f.emplace_back(r.points[i].r1, r.points[i].r2);
    max_len = std::max(max_len, f.size());
    names.push_back(to_string(r.strategy));
    frontiers.push_back(std::move(f));
  }

  const std::string tag = "g" + sanitize_token(format_g(results[0].scenario.gamma)) + "_t" +
                          sanitize_token(format_g(results[0].scenario.theta)) + "_r" +
                          sanitize_token(format_g(results[0].scenario.r0_threshold));
  for (size_t i = 0; i < results.size(); ++i) {
    std::string csv = "r1,r2\n";
    for (const auto& [x, y] : frontiers[i]) {
      csv += format_10g(x);
      csv += ",";
      csv += format_10g(y);
      csv += "\n";
    }
    write_file_atomic(output_dir / ("frontier_" + tag + "_" + names[i] + ".csv"), csv);
  }
  std::string combined;
  for (size_t i = 0; i < names.size(); ++i) {
    if (i) combined += ",";
    combined += "r1_" + names[i] + ",r2_" + names[i];
  }
  combined += "\n";
  for (size_t row = 0; row < max_len; ++row) {
    for (size_t i = 0; i < frontiers.size(); ++i) {
      if (i) combined += ",";
      if (row < frontiers[i].size()) {
        combined += format_10g(frontiers[i][row].first);
        combined += ",";
        combined += format_10g(frontiers[i][row].second);
      } else {
        combined += ",";
      }
    }
    combined += "\n";
  }
  write_file_atomic(output_dir / ("combined_" + tag + ".csv"), combined);
  return kExitOk;
}

int verify_region_file(const fs::path& file) {
  std::ifstream in(file);
  if (!in) {
    std::cerr << "verify: cannot open " << file << "\n";
    return kExitConfigError;
  }
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    std::cerr << "verify: bad JSON: " << e.what() << "\n";
    return kExitConfigError;
  }
  region::RateRegionResult r;
  try {
    region::from_json(j, r);
  } catch (const std::exception& e) {
    std::cerr << "verify: cannot decode region file: " << e.what() << "\n";
    return kExitConfigError;
  }

  const ChannelSet ch = region::scenario_channel(r.scenario);
  int failures = 0;
  auto fail = [&](size_t i, const std::string& what) {
    std::cerr << "verify: point " << i << ": " << what << "\n";
    ++failures;
  };

  for (size_t i = 0; i < r.points.size(); ++i) {
    const auto& p = r.points[i];
    if (p.status != ao::AoStatus::Ok) continue;
    if (!p.solution) {
      fail(i, "ok point without a solution");
      continue;
    }
    const Solution& sol = *p.solution;
    const RateReport fresh = rates::rate_report(ch, sol.precoder, sol.common_rates);
    auto close = [](double a, double b) {
      return std::abs(a - b) <= 1e-6 * std::max({1.0, std::abs(a), std::abs(b)});
    };
    for (size_t k = 0; k < fresh.private_rates.size(); ++k) {
      if (!close(fresh.private_rates[k], sol.report.private_rates[k]))
        fail(i, "private rate mismatch");
      if (!close(fresh.common_rate_per_user[k], sol.report.common_rate_per_user[k]))
        fail(i, "common rate mismatch");
      if (!close(fresh.total_unicast_rates[k], sol.report.total_unicast_rates[k]))
        fail(i, "total rate mismatch");
    }
    if (!close(fresh.common_rate, sol.report.common_rate)) fail(i, "R0 mismatch");
    double wsr = 0.0;
    for (Eigen::Index k = 0; k < p.weights.size(); ++k)
      wsr += p.weights(k) * fresh.total_unicast_rates[static_cast<size_t>(k)];
    if (!close(wsr, sol.wsr) || !close(p.wsr, sol.wsr)) fail(i, "wsr mismatch");
    if (!close(p.r1, fresh.total_unicast_rates[0]) || !close(p.r2, fresh.total_unicast_rates[1]))
      fail(i, "point coordinates mismatch");

    if (sol.precoder.total_power() > ch.power_budget() * (1.0 + 1e-7)) fail(i, "power violated");
    if (sol.common_rates.c0 < r.scenario.r0_threshold - 1e-6) fail(i, "QoS floor violated");
    if (sol.common_rates.total() > fresh.common_rate + 1e-6) fail(i, "common budget violated");
    for (size_t t = 1; t < sol.trace.size(); ++t)
      if (sol.trace[t] < sol.trace[t - 1] - 1e-6) fail(i, "trace decreases");
    if (!sol.trace.empty() && !close(sol.trace.back(), sol.wsr)) fail(i, "trace end != wsr");
  }

  const auto fresh_frontier = region::pareto_frontier(r.points);
  if (fresh_frontier != r.pareto_frontier) {
    std::cerr << "verify: stored pareto frontier differs from recomputation\n";
    ++failures;
  }
  if (failures == 0) {
    std::cout << "verify: " << file.string() << ": all invariants hold (" << r.points.size()
              << " points)\n";
    return kExitOk;
  }
  std::cerr << "verify: " << failures << " failures\n";
  return kExitConfigError;
}

int run_oracle(const ExperimentConfig& cfg) {
  const auto& oc = cfg.oracle;
  const double pt = snr_db_to_power(oc.snr_db);
  bool all_ok = true;
  std::cout << "seed,r0_threshold,ao_wsr,oracle_wsr,delta,ok\n";
  for (std::uint64_t seed : oc.seeds) {
    for (double r0 : oc.r0_threshold) {
      const ChannelSet ch =
          channel::random_channel(seed, oc.nt, oc.num_users).with_power_budget(pt);
      ao::AoConfig aocfg = cfg.ao;
      aocfg.seed = detail::mix_seed(cfg.seed, seed);
      const auto outcomes = strategies::solve_all(ch, {oc.strategy}, r0, oc.weights, aocfg,
                                                  cfg.cross_warm_start);
      const double ao_wsr = outcomes[0].solution ? outcomes[0].solution->wsr
                                                 : -std::numeric_limits<double>::infinity();
      const double oracle_wsr =
          region::brute_force_oracle(ch, oc.strategy, r0, oc.weights, oc.grid);
      const double delta = ao_wsr - oracle_wsr;
      const bool ok = ao_wsr >= oracle_wsr - oc.tolerance;
      all_ok &= ok;
      std::cout << seed << "," << format_g(r0) << "," << format_10g(ao_wsr) << ","
                << format_10g(oracle_wsr) << "," << format_10g(delta) << ","
                << (ok ? "yes" : "NO") << "\n";
    }
  }
  return all_ok ? kExitOk : kExitSolverFailureBudget;
}

}  // namespace rsma::experiment
