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

#include <cmath>

#include "rsma/channel.hpp"
#include "rsma/detail/rng.hpp"
#include "rsma/rates.hpp"
#include "rsma/wmmse.hpp"

using namespace rsma;

namespace {

PrecoderMatrix random_precoder(std::uint64_t seed, Eigen::Index nt, Eigen::Index users) {
  detail::ComplexGaussianSource src(seed);
  CMatrix m(nt, users + 1);
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < nt; ++i) m(i, j) = src.next();
  return PrecoderMatrix(std::move(m));
}

}  // namespace

TEST_CASE("sinr_common: scalar hand examples") {
  ChannelSet ch({CVector::Ones(1)}, 1.0);
  CMatrix m(1, 2);

  m << 1.0, 1.0;  // p0 = 1, p1 = 1
  CHECK(rates::sinr_common(ch, PrecoderMatrix(m), 0) == doctest::Approx(0.5).epsilon(1e-15));

  m << 0.0, 1.0;  // zero numerator
  CHECK(rates::sinr_common(ch, PrecoderMatrix(m), 0) == 0.0);

  m << std::sqrt(3.0), 0.0;  // no interference, unit noise
  CHECK(rates::sinr_common(ch, PrecoderMatrix(m), 0) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("sinr_private: scalar hand examples") {
  ChannelSet two({CVector::Ones(1), CVector::Ones(1)}, 1.0);
  CMatrix m(1, 3);
  m << 0.0, 1.0, 1.0;
  CHECK(rates::sinr_private(two, PrecoderMatrix(m), 0) == doctest::Approx(0.5).epsilon(1e-15));

  ChannelSet one({CVector::Ones(1)}, 1.0);
  CMatrix m1(1, 2);
  m1 << 0.0, std::sqrt(99.0);
  CHECK(rates::sinr_private(one, PrecoderMatrix(m1), 0) == doctest::Approx(99.0).epsilon(1e-12));

  m1 << 1.0, 0.0;
  CHECK(rates::sinr_private(one, PrecoderMatrix(m1), 0) == 0.0);
}

TEST_CASE("rate_report: values and common-rate minimum") {
  ChannelSet ch({CVector::Ones(1)}, 1.0);
  CMatrix m(1, 2);
  m << 1.0, 1.0;
  auto rep = rates::rate_report(ch, PrecoderMatrix(m));
  CHECK(rep.common_rate_per_user[0] == doctest::Approx(std::log2(1.5)).epsilon(1e-12));
  CHECK(rep.common_rate_per_user[0] == doctest::Approx(0.58496).epsilon(1e-4));

  // R0 = min over users
  auto ch2 = channel::deterministic_channel(4, 0.3, 0.7);
  auto p = random_precoder(3, 4, 2);
  auto rep2 = rates::rate_report(ch2, p);
  CHECK(rep2.common_rate ==
        std::min(rep2.common_rate_per_user[0], rep2.common_rate_per_user[1]));
  for (size_t k = 0; k < 2; ++k) {
    CHECK(rep2.common_rate <= rep2.common_rate_per_user[k]);
    CHECK(rep2.common_rate_per_user[k] >= 0.0);
    CHECK(rep2.private_rates[k] >= 0.0);
  }

  // zero common shares: totals equal private rates
  auto rep3 = rates::rate_report(ch2, p, CommonRateAllocation(0.0, {0.0, 0.0}));
  CHECK(rep3.total_unicast_rates[0] == rep3.private_rates[0]);
  CHECK(rep3.total_unicast_rates[1] == rep3.private_rates[1]);

  // with shares: totals shift by the share
  auto rep4 = rates::rate_report(ch2, p, CommonRateAllocation(0.1, {0.25, 0.5}));
  CHECK(rep4.total_unicast_rates[0] ==
        doctest::Approx(rep4.private_rates[0] + 0.25).epsilon(1e-15));
  CHECK(rep4.total_unicast_rates[1] ==
        doctest::Approx(rep4.private_rates[1] + 0.5).epsilon(1e-15));
}

TEST_CASE("rates are invariant to a common phase rotation of the precoder") {
  auto ch = channel::deterministic_channel(4, 0.3, 0.9);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto p = random_precoder(seed, 4, 2);
    const Complex phase = std::polar(1.0, 0.1 + static_cast<double>(seed));
    PrecoderMatrix rotated(p.matrix() * phase);
    for (Eigen::Index k = 0; k < 2; ++k) {
      CHECK(rates::sinr_common(ch, p, k) ==
            doctest::Approx(rates::sinr_common(ch, rotated, k)).epsilon(1e-12));
      CHECK(rates::sinr_private(ch, p, k) ==
            doctest::Approx(rates::sinr_private(ch, rotated, k)).epsilon(1e-12));
    }
  }
}

TEST_CASE("sinr_common denominator matches the wmmse private-layer power term") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    auto ch = channel::random_channel(seed, 4, 2);
    auto p = random_precoder(seed + 1000, 4, 2);
    for (Eigen::Index k = 0; k < 2; ++k) {
      const auto t = wmmse::power_terms(ch, p, k);
      const double gain = std::norm(ch.channel(k).dot(p.common_column()));
      CHECK(rates::sinr_common(ch, p, k) ==
            doctest::Approx(gain / t.t_private).epsilon(1e-12));
    }
  }
}

TEST_CASE("user index bounds are enforced") {
  ChannelSet ch({CVector::Ones(1)}, 1.0);
  CMatrix m(1, 2);
  m << 1.0, 1.0;
  PrecoderMatrix p(m);
  CHECK_THROWS_AS((rates::sinr_common(ch, p, 1)), std::invalid_argument);
  CHECK_THROWS_AS((rates::sinr_private(ch, p, -1)), std::invalid_argument);
}
