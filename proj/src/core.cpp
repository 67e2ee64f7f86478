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

#include "rsma/core.hpp"

#include <cmath>

namespace rsma {

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::Rs: return "rs";
    case Strategy::Mulp: return "mulp";
    case Strategy::Scsic: return "scsic";
  }
  throw std::invalid_argument("unknown strategy value");
}

Strategy strategy_from_string(const std::string& name) {
  if (name == "rs") return Strategy::Rs;
  if (name == "mulp" || name == "mu-lp") return Strategy::Mulp;
  if (name == "scsic" || name == "sc-sic") return Strategy::Scsic;
  throw std::invalid_argument("unknown strategy: '" + name + "'");
}

ChannelSet::ChannelSet(std::vector<CVector> channels, double power_budget)
    : channels_(std::move(channels)), power_budget_(power_budget) {
  if (channels_.empty()) throw std::invalid_argument("ChannelSet: needs at least one user");
  nt_ = channels_.front().size();
  if (nt_ < 1) throw std::invalid_argument("ChannelSet: channel vectors must be non-empty");
  for (size_t k = 0; k < channels_.size(); ++k) {
    const auto& h = channels_[k];
    if (h.size() != nt_)
      throw std::invalid_argument("ChannelSet: channel of user " + std::to_string(k) +
                                  " has length " + std::to_string(h.size()) +
                                  ", expected " + std::to_string(nt_));
    if (!h.allFinite())
      throw std::invalid_argument("ChannelSet: channel of user " + std::to_string(k) +
                                  " has non-finite entries");
    if (h.norm() == 0.0)
      throw std::invalid_argument("ChannelSet: channel of user " + std::to_string(k) +
                                  " is all-zero");
  }
  if (!(power_budget_ > 0.0) || !std::isfinite(power_budget_))
    throw std::invalid_argument("ChannelSet: power budget must be positive and finite");
}

ChannelSet ChannelSet::with_power_budget(double power_budget) const {
  return ChannelSet(channels_, power_budget);
}

PrecoderMatrix::PrecoderMatrix(CMatrix mat) : mat_(std::move(mat)) {
  if (mat_.rows() < 1 || mat_.cols() < 2)
    throw std::invalid_argument("PrecoderMatrix: needs Nt >= 1 rows and K+1 >= 2 columns");
  if (!mat_.allFinite())
    throw std::invalid_argument("PrecoderMatrix: non-finite entries");
}

CommonRateAllocation::CommonRateAllocation(double c0_in, std::vector<double> ck0_in)
    : c0(c0_in), ck0(std::move(ck0_in)) {
  if (!(c0 >= 0.0))
    throw std::invalid_argument("CommonRateAllocation: c0 must be >= 0, got " + std::to_string(c0));
  for (size_t k = 0; k < ck0.size(); ++k)
    if (!(ck0[k] >= 0.0))
      throw std::invalid_argument("CommonRateAllocation: ck0[" + std::to_string(k) +
                                  "] must be >= 0, got " + std::to_string(ck0[k]));
}

double CommonRateAllocation::total() const {
  double t = c0;
  for (double v : ck0) t += v;
  return t;
}

void Scenario::validate() const {
  if (nt < 1) throw std::invalid_argument("Scenario: nt must be >= 1");
  if (num_users < 1) throw std::invalid_argument("Scenario: num_users must be >= 1");
  if (!(r0_threshold >= 0.0))
    throw std::invalid_argument("Scenario: r0_threshold must be >= 0");
  if (!(gamma > 0.0)) throw std::invalid_argument("Scenario: gamma must be > 0");
  for (const auto& u : weight_grid) {
    if (u.size() != num_users)
      throw std::invalid_argument("Scenario: weight vector length must equal num_users");
    if (!(u.minCoeff() > 0.0))
      throw std::invalid_argument("Scenario: weight vectors must be strictly positive");
  }
}

double snr_db_to_power(double snr_db) { return std::pow(10.0, snr_db / 10.0); }

double scenario_power(const Scenario& s) { return snr_db_to_power(s.snr_db); }

}  // namespace rsma
