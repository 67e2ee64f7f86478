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

#include <doctest.h>

#include <limits>

#include "rsma/core.hpp"

using namespace rsma;

TEST_CASE("scenario_power converts dB to linear") {
  Scenario s;
  s.snr_db = 20.0;
  CHECK(scenario_power(s) == doctest::Approx(100.0).epsilon(1e-12));
  s.snr_db = 0.0;
  CHECK(scenario_power(s) == doctest::Approx(1.0).epsilon(1e-12));
  s.snr_db = 10.0;
  CHECK(scenario_power(s) == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("ChannelSet rejects invalid construction") {
  CVector h = CVector::Ones(4);
  CHECK_NOTHROW((ChannelSet({h}, 1.0)));
  CHECK_THROWS_AS((ChannelSet({}, 1.0)), std::invalid_argument);
  CHECK_THROWS_AS((ChannelSet({h}, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS((ChannelSet({h}, -3.0)), std::invalid_argument);
  CHECK_THROWS_AS((ChannelSet({h, CVector::Zero(4)}, 1.0)), std::invalid_argument);
  CHECK_THROWS_AS((ChannelSet({h, CVector::Ones(3)}, 1.0)), std::invalid_argument);
}

TEST_CASE("ChannelSet accessors and power override") {
  CVector h1 = CVector::Ones(2);
  CVector h2(2);
  h2 << Complex(0.0, 1.0), Complex(1.0, 0.0);
  ChannelSet ch({h1, h2}, 5.0);
  CHECK(ch.num_users() == 2);
  CHECK(ch.num_antennas() == 2);
  CHECK(ch.noise_variance(0) == 1.0);
  CHECK(ch.power_budget() == 5.0);
  ChannelSet ch2 = ch.with_power_budget(100.0);
  CHECK(ch2.power_budget() == 100.0);
  CHECK(ch2.channel(1) == ch.channel(1));
}

TEST_CASE("PrecoderMatrix validates shape and content") {
  CHECK_NOTHROW((PrecoderMatrix(CMatrix::Zero(4, 3))));
  CHECK_THROWS_AS((PrecoderMatrix(CMatrix::Zero(4, 1))), std::invalid_argument);
  CMatrix bad = CMatrix::Zero(2, 2);
  bad(0, 0) = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
  CHECK_THROWS_AS((PrecoderMatrix(bad)), std::invalid_argument);

  CMatrix m = CMatrix::Zero(2, 3);
  m(0, 0) = Complex(3.0, 4.0);
  PrecoderMatrix p(m);
  CHECK(p.num_users() == 2);
  CHECK(p.total_power() == doctest::Approx(25.0));
  CHECK(p.common_column()(0) == Complex(3.0, 4.0));
}

TEST_CASE("CommonRateAllocation rejects negative entries") {
  CHECK_NOTHROW((CommonRateAllocation(0.5, {0.0, 0.25})));
  CHECK_THROWS_AS((CommonRateAllocation(-0.1, {})), std::invalid_argument);
  CHECK_THROWS_AS((CommonRateAllocation(0.0, {-1e-9})), std::invalid_argument);
  CHECK(CommonRateAllocation(0.5, {0.25, 0.25}).total() == doctest::Approx(1.0));
}

TEST_CASE("Scenario validation") {
  Scenario s;
  s.num_users = 2;
  s.weight_grid = {Eigen::Vector2d(1.0, 0.5)};
  CHECK_NOTHROW((s.validate()));
  s.weight_grid = {Eigen::Vector2d(1.0, 0.0)};
  CHECK_THROWS_AS((s.validate()), std::invalid_argument);
  s.weight_grid = {Eigen::Vector2d(1.0, 1.0)};
  s.r0_threshold = -0.5;
  CHECK_THROWS_AS((s.validate()), std::invalid_argument);
}

TEST_CASE("strategy names round-trip") {
  for (Strategy st : {Strategy::Rs, Strategy::Mulp, Strategy::Scsic})
    CHECK(strategy_from_string(to_string(st)) == st);
  CHECK_THROWS_AS((strategy_from_string("noma")), std::invalid_argument);
}
