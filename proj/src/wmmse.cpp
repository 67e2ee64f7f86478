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

#include "rsma/wmmse.hpp"

#include <atomic>
#include <cmath>
#include <iostream>
#include <numbers>

#include "rsma/rates.hpp"

namespace rsma::wmmse {

namespace {

constexpr double kWeightClamp = 1e12;
std::atomic<std::uint64_t> g_clamp_count{0};

double clamp_weight(double u) {
  if (u > kWeightClamp) {
    if (g_clamp_count.fetch_add(1) == 0)
      std::cerr << "rsma: MSE weight clamped at " << kWeightClamp << "\n";
    return kWeightClamp;
  }
  return u;
}

}  // namespace

double weight_clamp() { return kWeightClamp; }
std::uint64_t clamp_activations() { return g_clamp_count.load(); }

PowerTerms power_terms(const ChannelSet& ch, const PrecoderMatrix& p, Eigen::Index k) {
  if (k < 0 || k >= ch.num_users())
    throw std::invalid_argument("power_terms: user index out of range");
  const CVector& h = ch.channel(k);
  const double common_gain = std::norm(h.dot(p.common_column()));
  double t_private = 1.0;
  for (Eigen::Index j = 0; j < ch.num_users(); ++j)
    t_private += std::norm(h.dot(p.private_column(j)));
  PowerTerms t;
  t.t_common = t_private + common_gain;
  t.t_private = t_private;
  t.i_common = t_private;  // I_{k,0} = T_k
  t.i_private = t_private - std::norm(h.dot(p.private_column(k)));
  return t;
}

std::pair<double, double> mse(const ChannelSet& ch, const PrecoderMatrix& p,
                              const WmmseState& state, Eigen::Index k) {
  const PowerTerms t = power_terms(ch, p, k);
  const CVector& h = ch.channel(k);
  const Complex g0 = state.g_common.at(static_cast<size_t>(k));
  const Complex gk = state.g_private.at(static_cast<size_t>(k));
  const double e0 =
      std::norm(g0) * t.t_common - 2.0 * std::real(g0 * h.dot(p.common_column())) + 1.0;
  const double ek =
      std::norm(gk) * t.t_private - 2.0 * std::real(gk * h.dot(p.private_column(k))) + 1.0;
  return {e0, ek};
}

std::pair<double, double> min_mse(const ChannelSet& ch, const PrecoderMatrix& p, Eigen::Index k) {
  const PowerTerms t = power_terms(ch, p, k);
  return {t.i_common / t.t_common, t.i_private / t.t_private};
}

WmmseState mmse_equalizers(const ChannelSet& ch, const PrecoderMatrix& p) {
  const size_t K = static_cast<size_t>(ch.num_users());
  WmmseState s;
  s.g_common.resize(K);
  s.g_private.resize(K);
  s.u_common.assign(K, 1.0);
  s.u_private.assign(K, 1.0);
  for (Eigen::Index k = 0; k < ch.num_users(); ++k) {
    const PowerTerms t = power_terms(ch, p, k);
    const CVector& h = ch.channel(k);
    // g = p^H h / T; p.dot(h) conjugates the precoder column.
    s.g_common[static_cast<size_t>(k)] = p.common_column().dot(h) / t.t_common;
    s.g_private[static_cast<size_t>(k)] = p.private_column(k).dot(h) / t.t_private;
  }
  return s;
}

WmmseState mmse_state(const ChannelSet& ch, const PrecoderMatrix& p) {
  WmmseState s = mmse_equalizers(ch, p);
  for (Eigen::Index k = 0; k < ch.num_users(); ++k) {
    const auto [e0, ek] = min_mse(ch, p, k);
    s.u_common[static_cast<size_t>(k)] = clamp_weight(1.0 / e0);
    s.u_private[static_cast<size_t>(k)] = clamp_weight(1.0 / ek);
  }
  return s;
}

std::pair<double, double> rate_wmmse_gap(const ChannelSet& ch, const PrecoderMatrix& p,
                                         Eigen::Index k) {
  const auto [e0, ek] = min_mse(ch, p, k);
  const double u0 = 1.0 / e0;
  const double uk = 1.0 / ek;
  const double xi0 = u0 * e0 - std::log2(u0);
  const double xik = uk * ek - std::log2(uk);
  const double r0 = rates::rate_bits(rates::sinr_common(ch, p, k));
  const double rk = rates::rate_bits(rates::sinr_private(ch, p, k));
  return {xi0 - (1.0 - r0), xik - (1.0 - rk)};
}

}  // namespace rsma::wmmse
