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

#include <cstdint>

#include "rsma/core.hpp"

namespace rsma::channel {

/// Deterministic two-user channel family:
///   h1 = all-ones, h2[m] = gamma * e^{-j m theta}, m = 0..nt-1.
/// User 1 has unit-modulus entries, user 2 entries of modulus gamma; theta
/// controls the angle between the channels. Power budget defaults to 1 and
/// is set from the scenario by the caller. Throws on nt < 1 or gamma <= 0.
ChannelSet deterministic_channel(Eigen::Index nt, double gamma, double theta);

/// i.i.d. circularly-symmetric complex Gaussian channels, unit variance per
/// entry. Byte-reproducible for equal (seed, nt, k).
ChannelSet random_channel(std::uint64_t seed, Eigen::Index nt, Eigen::Index k);

/// Identity of the generator behind random_channel, recorded in run
/// manifests for reproducibility.
const char* random_generator_id();

}  // namespace rsma::channel
