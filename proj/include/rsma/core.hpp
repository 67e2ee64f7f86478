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

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsma {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Transmission strategies for the joint unicast/multicast downlink.
enum class Strategy { Rs, Mulp, Scsic };

std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& name);

/// Physical problem instance: per-user channel vectors, unit noise
/// variances and a total transmit power budget (linear scale).
///
/// All types in this header are immutable after construction and safe to
/// share across threads. Constructors throw std::invalid_argument with a
/// diagnostic when an invariant is violated; nothing is silently fixed up.
class ChannelSet {
 public:
  ChannelSet(std::vector<CVector> channels, double power_budget);

  Eigen::Index num_antennas() const { return nt_; }
  Eigen::Index num_users() const { return static_cast<Eigen::Index>(channels_.size()); }
  const CVector& channel(Eigen::Index user) const { return channels_.at(static_cast<size_t>(user)); }
  const std::vector<CVector>& channels() const { return channels_; }
  double noise_variance(Eigen::Index /*user*/) const { return 1.0; }
  double power_budget() const { return power_budget_; }

  /// Same channels under a different power budget.
  ChannelSet with_power_budget(double power_budget) const;

 private:
  std::vector<CVector> channels_;
  Eigen::Index nt_ = 0;
  double power_budget_ = 1.0;
};

/// Precoder columns: column 0 carries the (super-)common stream, columns
/// 1..K the per-user unicast/private streams.
class PrecoderMatrix {
 public:
  /// Placeholder single-antenna, single-user zero precoder (deserialization
  /// target).
  PrecoderMatrix() : mat_(CMatrix::Zero(1, 2)) {}
  /// mat is Nt x (K+1).
  explicit PrecoderMatrix(CMatrix mat);

  Eigen::Index num_antennas() const { return mat_.rows(); }
  Eigen::Index num_users() const { return mat_.cols() - 1; }
  CVector common_column() const { return mat_.col(0); }
  CVector private_column(Eigen::Index user) const { return mat_.col(user + 1); }
  const CMatrix& matrix() const { return mat_; }
  double total_power() const { return mat_.squaredNorm(); }

 private:
  CMatrix mat_;
};

/// Split of the common-stream rate: c0 is the multicast portion, ck0[k]
/// user-k's share carried on the common stream. Entries are in bit/s/Hz.
/// The joint bound c0 + sum(ck0) <= min_k R_{k,0} depends on a companion
/// precoder and is checked by rsma::ao / rsma::region verification, not here.
struct CommonRateAllocation {
  double c0 = 0.0;
  std::vector<double> ck0;

  CommonRateAllocation() = default;
  CommonRateAllocation(double c0_in, std::vector<double> ck0_in);

  double total() const;
};

/// One experiment point: the deterministic two-user channel family
/// (gamma, theta), transmit SNR, multicast QoS threshold, strategy and the
/// WSR weight vectors to sweep.
struct Scenario {
  Eigen::Index nt = 4;
  Eigen::Index num_users = 2;
  double snr_db = 20.0;
  double gamma = 1.0;
  double theta = 0.0;
  double r0_threshold = 0.0;
  Strategy strategy = Strategy::Rs;
  std::vector<Eigen::VectorXd> weight_grid;

  void validate() const;
};

/// Transmit power Pt = 10^(snr_db/10); unit noise makes this the SNR.
double scenario_power(const Scenario& s);
double snr_db_to_power(double snr_db);

/// Achievable rates of a (channel, precoder) pair, all in bit/s/Hz.
struct RateReport {
  std::vector<double> common_rate_per_user;  // R_{k,0}
  double common_rate = 0.0;                  // R_0 = min_k R_{k,0}
  std::vector<double> private_rates;         // R_k
  std::vector<double> total_unicast_rates;   // R_{k,tot} = C_{k,0} + R_k
};

/// Converged output of one alternating-optimization run.
struct Solution {
  PrecoderMatrix precoder;
  CommonRateAllocation common_rates;
  RateReport report;
  double wsr = 0.0;
  std::vector<double> trace;            // per-iteration WSR, non-decreasing
  std::vector<double> trace_residuals;  // worst original-constraint violation per iterate
  int iterations = 0;
  bool converged = false;
};

}  // namespace rsma
