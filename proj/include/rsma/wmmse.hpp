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
#include <utility>

#include "rsma/core.hpp"

namespace rsma::wmmse {

/// Per-user scalar equalizers and MSE weights for the common and private
/// stream layers. Weights are strictly positive.
struct WmmseState {
  std::vector<Complex> g_common;   // g_{k,0}
  std::vector<Complex> g_private;  // g_k
  std::vector<double> u_common;    // u_{k,0} > 0
  std::vector<double> u_private;   // u_k > 0
};

/// Received-power terms at user k:
///   T_{k,0} = |h_k^H p0|^2 + sum_j |h_k^H p_j|^2 + 1   (full received power)
///   T_k     = T_{k,0} - |h_k^H p0|^2                     (after common SIC)
///   I_{k,0} = T_k                                        (interference for s0)
///   I_k     = T_k - |h_k^H p_k|^2                        (interference for s_k)
struct PowerTerms {
  double t_common;
  double t_private;
  double i_common;
  double i_private;
};

PowerTerms power_terms(const ChannelSet& ch, const PrecoderMatrix& p, Eigen::Index k);

/// (common, private) mean square errors at user k for the given equalizers.
std::pair<double, double> mse(const ChannelSet& ch, const PrecoderMatrix& p,
                              const WmmseState& state, Eigen::Index k);

/// (common, private) minimum MSEs, eps^MMSE = I/T, both in (0, 1].
std::pair<double, double> min_mse(const ChannelSet& ch, const PrecoderMatrix& p, Eigen::Index k);

/// Closed-form MMSE equalizers g = p^H h / T for both layers; weight fields
/// are left at 1.
WmmseState mmse_equalizers(const ChannelSet& ch, const PrecoderMatrix& p);

/// Optimum MSE weights u = 1/eps^MMSE filled into a state that already has
/// the MMSE equalizers. Weights are clamped at weight_clamp(); the clamp is
/// counted (see clamp_activations) and never fires at moderate SNRs.
WmmseState mmse_state(const ChannelSet& ch, const PrecoderMatrix& p);

/// Residuals of the identity xi^MMSE = 1 - R for the common and private
/// layers at user k, where xi = u*eps - log2(u) at the MMSE equalizer and
/// weight. Both components are zero up to floating-point error.
std::pair<double, double> rate_wmmse_gap(const ChannelSet& ch, const PrecoderMatrix& p,
                                         Eigen::Index k);

double weight_clamp();

/// Number of times the weight clamp has fired in this process.
std::uint64_t clamp_activations();

}  // namespace rsma::wmmse
