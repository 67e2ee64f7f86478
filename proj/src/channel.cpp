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

#include "rsma/channel.hpp"

#include <cmath>

#include "rsma/detail/rng.hpp"

namespace rsma::channel {

ChannelSet deterministic_channel(Eigen::Index nt, double gamma, double theta) {
  if (nt < 1) throw std::invalid_argument("deterministic_channel: nt must be >= 1");
  if (!(gamma > 0.0)) throw std::invalid_argument("deterministic_channel: gamma must be > 0");

  CVector h1 = CVector::Ones(nt);
  CVector h2(nt);
  for (Eigen::Index m = 0; m < nt; ++m)
    h2(m) = gamma * std::conj(std::polar(1.0, static_cast<double>(m) * theta));
  return ChannelSet({std::move(h1), std::move(h2)}, 1.0);
}

ChannelSet random_channel(std::uint64_t seed, Eigen::Index nt, Eigen::Index k) {
  if (nt < 1) throw std::invalid_argument("random_channel: nt must be >= 1");
  if (k < 1) throw std::invalid_argument("random_channel: k must be >= 1");

  detail::ComplexGaussianSource src(seed);
  std::vector<CVector> channels;
  channels.reserve(static_cast<size_t>(k));
  for (Eigen::Index u = 0; u < k; ++u) {
    CVector h(nt);
    for (Eigen::Index m = 0; m < nt; ++m) h(m) = src.next();
    channels.push_back(std::move(h));
  }
  return ChannelSet(std::move(channels), 1.0);
}

const char* random_generator_id() { return "mt19937_64/box-muller-polar"; }

}  // namespace rsma::channel
