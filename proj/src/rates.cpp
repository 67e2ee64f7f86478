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

#include "rsma/rates.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace rsma::rates {

namespace {

void check_user(const ChannelSet& ch, const PrecoderMatrix& p, Eigen::Index k) {
  if (k < 0 || k >= ch.num_users())
    throw std::invalid_argument("user index out of range: " + std::to_string(k));
  if (p.num_users() != ch.num_users() || p.num_antennas() != ch.num_antennas())
    throw std::invalid_argument("precoder dimensions do not match channel set");
}

double gain(const CVector& h, const CVector& col) { return std::norm(h.dot(col)); }

}  // namespace

double sinr_common(const ChannelSet& ch, const PrecoderMatrix& p, Eigen::Index k) {
  check_user(ch, p, k);
  const CVector& h = ch.channel(k);
  double interference = 1.0;  // unit noise
  for (Eigen::Index j = 0; j < ch.num_users(); ++j) interference += gain(h, p.private_column(j));
  return gain(h, p.common_column()) / interference;
}

double sinr_private(const ChannelSet& ch, const PrecoderMatrix& p, Eigen::Index k) {
  check_user(ch, p, k);
  const CVector& h = ch.channel(k);
  double interference = 1.0;
  for (Eigen::Index j = 0; j < ch.num_users(); ++j)
    if (j != k) interference += gain(h, p.private_column(j));
  return gain(h, p.private_column(k)) / interference;
}

double rate_bits(double sinr) { return std::log1p(sinr) / std::numbers::ln2; }

RateReport rate_report(const ChannelSet& ch, const PrecoderMatrix& p,
                       const std::optional<CommonRateAllocation>& c) {
  const Eigen::Index K = ch.num_users();
  if (c && static_cast<Eigen::Index>(c->ck0.size()) != K)
    throw std::invalid_argument("rate_report: common-rate split has wrong user count");

  RateReport r;
  r.common_rate_per_user.resize(static_cast<size_t>(K));
  r.private_rates.resize(static_cast<size_t>(K));
  r.total_unicast_rates.resize(static_cast<size_t>(K));
  double r0 = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < K; ++k) {
    const double rk0 = rate_bits(sinr_common(ch, p, k));
    const double rk = rate_bits(sinr_private(ch, p, k));
    r.common_rate_per_user[static_cast<size_t>(k)] = rk0;
    r.private_rates[static_cast<size_t>(k)] = rk;
    r.total_unicast_rates[static_cast<size_t>(k)] = rk + (c ? c->ck0[static_cast<size_t>(k)] : 0.0);
    r0 = std::min(r0, rk0);
  }
  r.common_rate = r0;
  return r;
}

}  // namespace rsma::rates
