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

#include "rsma/serialize.hpp"

namespace rsma {

namespace {

json complex_to_json(const Complex& c) { return json::array({c.real(), c.imag()}); }

Complex complex_from_json(const json& j) {
  return Complex(j.at(0).get<double>(), j.at(1).get<double>());
}

json cvector_to_json(const CVector& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(complex_to_json(v(i)));
  return arr;
}

CVector cvector_from_json(const json& j) {
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v(i) = complex_from_json(j.at(static_cast<size_t>(i)));
  return v;
}

json rvector_to_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

Eigen::VectorXd rvector_from_json(const json& j) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = j.at(static_cast<size_t>(i)).get<double>();
  return v;
}

}  // namespace

void to_json(json& j, const ChannelSet& ch) {
  json channels = json::array();
  json noise = json::array();
  for (Eigen::Index k = 0; k < ch.num_users(); ++k) {
    channels.push_back(cvector_to_json(ch.channel(k)));
    noise.push_back(ch.noise_variance(k));
  }
  j = json{{"num_antennas", ch.num_antennas()},
           {"num_users", ch.num_users()},
           {"channels", std::move(channels)},
           {"noise_variance", std::move(noise)},
           {"power_budget", ch.power_budget()}};
}

void from_json(const json& j, ChannelSet& ch) {
  std::vector<CVector> channels;
  for (const auto& hj : j.at("channels")) channels.push_back(cvector_from_json(hj));
  for (const auto& nv : j.at("noise_variance"))
    if (nv.get<double>() != 1.0)
      throw std::invalid_argument("ChannelSet: noise variances must equal 1");
  ch = ChannelSet(std::move(channels), j.at("power_budget").get<double>());
}

void to_json(json& j, const PrecoderMatrix& p) {
  json cols = json::array();
  for (Eigen::Index c = 0; c < p.matrix().cols(); ++c)
    cols.push_back(cvector_to_json(p.matrix().col(c)));
  j = json{{"num_antennas", p.num_antennas()}, {"columns", std::move(cols)}};
}

void from_json(const json& j, PrecoderMatrix& p) {
  const auto& cols = j.at("columns");
  const Eigen::Index nt = j.at("num_antennas").get<Eigen::Index>();
  CMatrix m(nt, static_cast<Eigen::Index>(cols.size()));
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    m.col(c) = cvector_from_json(cols.at(static_cast<size_t>(c)));
  p = PrecoderMatrix(std::move(m));
}

void to_json(json& j, const CommonRateAllocation& c) {
  j = json{{"c0", c.c0}, {"ck0", c.ck0}};
}

void from_json(const json& j, CommonRateAllocation& c) {
  c = CommonRateAllocation(j.at("c0").get<double>(), j.at("ck0").get<std::vector<double>>());
}

void to_json(json& j, const Scenario& s) {
  json grid = json::array();
  for (const auto& w : s.weight_grid) grid.push_back(rvector_to_json(w));
  j = json{{"nt", s.nt},
           {"num_users", s.num_users},
           {"snr_db", s.snr_db},
           {"gamma", s.gamma},
           {"theta", s.theta},
           {"r0_threshold", s.r0_threshold},
           {"strategy", to_string(s.strategy)},
           {"weight_grid", std::move(grid)}};
}

void from_json(const json& j, Scenario& s) {
  s.nt = j.at("nt").get<Eigen::Index>();
  s.num_users = j.at("num_users").get<Eigen::Index>();
  s.snr_db = j.at("snr_db").get<double>();
  s.gamma = j.at("gamma").get<double>();
  s.theta = j.at("theta").get<double>();
  s.r0_threshold = j.at("r0_threshold").get<double>();
  s.strategy = strategy_from_string(j.at("strategy").get<std::string>());
  s.weight_grid.clear();
  for (const auto& wj : j.at("weight_grid")) s.weight_grid.push_back(rvector_from_json(wj));
  s.validate();
}

void to_json(json& j, const RateReport& r) {
  j = json{{"common_rate_per_user", r.common_rate_per_user},
           {"common_rate", r.common_rate},
           {"private_rates", r.private_rates},
           {"total_unicast_rates", r.total_unicast_rates}};
}

void from_json(const json& j, RateReport& r) {
  r.common_rate_per_user = j.at("common_rate_per_user").get<std::vector<double>>();
  r.common_rate = j.at("common_rate").get<double>();
  r.private_rates = j.at("private_rates").get<std::vector<double>>();
  r.total_unicast_rates = j.at("total_unicast_rates").get<std::vector<double>>();
}

void to_json(json& j, const Solution& s) {
  j = json{{"precoder", s.precoder},
           {"common_rates", s.common_rates},
           {"report", s.report},
           {"wsr", s.wsr},
           {"trace", s.trace},
           {"trace_residuals", s.trace_residuals},
           {"iterations", s.iterations},
           {"converged", s.converged}};
}

void from_json(const json& j, Solution& s) {
  from_json(j.at("precoder"), s.precoder);
  from_json(j.at("common_rates"), s.common_rates);
  from_json(j.at("report"), s.report);
  s.wsr = j.at("wsr").get<double>();
  s.trace = j.at("trace").get<std::vector<double>>();
  s.trace_residuals = j.value("trace_residuals", std::vector<double>{});
  s.iterations = j.at("iterations").get<int>();
  s.converged = j.at("converged").get<bool>();
}

namespace wmmse {

void to_json(json& j, const WmmseState& s) {
  json gc = json::array(), gp = json::array();
  for (const auto& g : s.g_common) gc.push_back(complex_to_json(g));
  for (const auto& g : s.g_private) gp.push_back(complex_to_json(g));
  j = json{{"g_common", std::move(gc)},
           {"g_private", std::move(gp)},
           {"u_common", s.u_common},
           {"u_private", s.u_private}};
}

void from_json(const json& j, WmmseState& s) {
  s.g_common.clear();
  s.g_private.clear();
  for (const auto& gj : j.at("g_common")) s.g_common.push_back(complex_from_json(gj));
  for (const auto& gj : j.at("g_private")) s.g_private.push_back(complex_from_json(gj));
  s.u_common = j.at("u_common").get<std::vector<double>>();
  s.u_private = j.at("u_private").get<std::vector<double>>();
  for (double u : s.u_common)
    if (!(u > 0.0)) throw std::invalid_argument("WmmseState: weights must be positive");
  for (double u : s.u_private)
    if (!(u > 0.0)) throw std::invalid_argument("WmmseState: weights must be positive");
}

}  // namespace wmmse

namespace region {

void to_json(json& j, const RegionPoint& p) {
  j = json{{"weights", rvector_to_json(p.weights)},
           {"status", ao::to_string(p.status)},
           {"lineage", p.lineage},
           {"r1", p.r1},
           {"r2", p.r2},
           {"wsr", p.wsr},
           {"iterations", p.iterations},
           {"converged", p.converged}};
  if (p.scsic_first) j["scsic_first"] = *p.scsic_first;
  if (p.solution) j["solution"] = *p.solution;
}

void from_json(const json& j, RegionPoint& p) {
  p.weights = rvector_from_json(j.at("weights"));
  const std::string st = j.at("status").get<std::string>();
  if (st == "ok")
    p.status = ao::AoStatus::Ok;
  else if (st == "infeasible")
    p.status = ao::AoStatus::Infeasible;
  else
    p.status = ao::AoStatus::NumericalFailure;
  p.lineage = j.value("lineage", std::string{});
  p.r1 = j.at("r1").get<double>();
  p.r2 = j.at("r2").get<double>();
  p.wsr = j.at("wsr").get<double>();
  p.iterations = j.at("iterations").get<int>();
  p.converged = j.at("converged").get<bool>();
  if (j.contains("scsic_first")) p.scsic_first = j.at("scsic_first").get<Eigen::Index>();
  if (j.contains("solution")) {
    Solution s;
    from_json(j.at("solution"), s);
    p.solution = std::move(s);
  }
}

void to_json(json& j, const RateRegionResult& r) {
  json pts = json::array();
  for (const auto& p : r.points) pts.push_back(p);
  j = json{{"strategy", rsma::to_string(r.strategy)},
           {"scenario", r.scenario},
           {"points", std::move(pts)},
           {"pareto_frontier", r.pareto_frontier}};
}

void from_json(const json& j, RateRegionResult& r) {
  r.strategy = strategy_from_string(j.at("strategy").get<std::string>());
  from_json(j.at("scenario"), r.scenario);
  r.points.clear();
  for (const auto& pj : j.at("points")) {
    RegionPoint p;
    from_json(pj, p);
    r.points.push_back(std::move(p));
  }
  r.pareto_frontier = j.at("pareto_frontier").get<std::vector<std::size_t>>();
}

}  // namespace region

}  // namespace rsma
