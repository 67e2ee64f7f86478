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

#include <optional>

#include "rsma/core.hpp"

namespace rsma::rates {

/// SINR of the common stream at user k: |h_k^H p0|^2 over the power of all
/// unicast streams plus unit noise. k is 0-based.
double sinr_common(const ChannelSet& ch, const PrecoderMatrix& p, Eigen::Index k);

/// SINR of user k's own unicast stream after the common stream has been
/// removed: the common column does not appear in the denominator.
double sinr_private(const ChannelSet& ch, const PrecoderMatrix& p, Eigen::Index k);

/// log2(1 + sinr), evaluated via log1p for accuracy at small SINR.
double rate_bits(double sinr);

/// Full rate evaluation. When a common-rate split is given, total unicast
/// rates are C_{k,0} + R_k; otherwise they default to the private rates.
RateReport rate_report(const ChannelSet& ch, const PrecoderMatrix& p,
                       const std::optional<CommonRateAllocation>& c = std::nullopt);

}  // namespace rsma::rates
