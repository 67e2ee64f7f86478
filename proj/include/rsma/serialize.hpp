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
//
// JSON serialization of the domain types. Complex numbers are two-element
// arrays [re, im]; doubles round-trip exactly (shortest representation).

#pragma once

#include <json.hpp>

#include "rsma/core.hpp"
#include "rsma/region.hpp"
#include "rsma/wmmse.hpp"

namespace rsma {

using nlohmann::json;

void to_json(json& j, const ChannelSet& ch);
void from_json(const json& j, ChannelSet& ch);

void to_json(json& j, const PrecoderMatrix& p);
void from_json(const json& j, PrecoderMatrix& p);

void to_json(json& j, const CommonRateAllocation& c);
void from_json(const json& j, CommonRateAllocation& c);

void to_json(json& j, const Scenario& s);
void from_json(const json& j, Scenario& s);

void to_json(json& j, const RateReport& r);
void from_json(const json& j, RateReport& r);

void to_json(json& j, const Solution& s);
void from_json(const json& j, Solution& s);

namespace wmmse {
void to_json(json& j, const WmmseState& s);
void from_json(const json& j, WmmseState& s);
}  // namespace wmmse

namespace region {
void to_json(json& j, const RegionPoint& p);
void from_json(const json& j, RegionPoint& p);
void to_json(json& j, const RateRegionResult& r);
void from_json(const json& j, RateRegionResult& r);
}  // namespace region

}  // namespace rsma
