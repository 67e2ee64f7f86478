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

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace rsma::detail {

// CN(0,1) samples via Box-Muller (polar form) on mt19937_64 words. The
// uniform mapping is fixed here so output never depends on a standard
// library's distribution implementation.
class ComplexGaussianSource {
 public:
  explicit ComplexGaussianSource(std::uint64_t seed) : engine_(seed) {}

  std::complex<double> next() {
    const double u1 = uniform_open();
    const double u2 = uniform_open();
    return std::polar(std::sqrt(-std::log(u1)), 2.0 * std::numbers::pi * u2);
  }

 private:
  double uniform_open() {
    // (0,1]: keeps log() finite.
    const std::uint64_t bits = engine_() >> 11;
    return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
  }

  std::mt19937_64 engine_;
};

// splitmix64 step, used to derive independent stream seeds.
inline std::uint64_t mix_seed(std::uint64_t state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  return mix_seed(mix_seed(a) ^ (b + 0x632be59bd9b4e019ull));
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return mix_seed(mix_seed(a, b), c);
}

}  // namespace rsma::detail
