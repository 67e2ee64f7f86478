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

#include "rsma/region.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "rsma/channel.hpp"
#include "rsma/detail/parallel.hpp"
#include "rsma/detail/rng.hpp"
#include "rsma/rates.hpp"

namespace rsma::region {

namespace {

RegionPoint point_from_outcome(const Eigen::VectorXd& w, const strategies::StrategyOutcome& o) {
  RegionPoint pt;
  pt.weights = w;
  pt.status = o.status;
  pt.scsic_first = o.scsic_first;
  pt.lineage = o.warm_start_lineage;
  if (o.solution) {
    pt.solution = o.solution;
    pt.r1 = o.solution->report.total_unicast_rates.at(0);
    pt.r2 = o.solution->report.total_unicast_rates.at(1);
    pt.wsr = o.solution->wsr;
    pt.iterations = o.solution->iterations;
    pt.converged = o.solution->converged;
  }
  return pt;
}

void require_same_scenario(const Scenario& a, const Scenario& b) {
  const bool same = a.nt == b.nt && a.num_users == b.num_users && a.snr_db == b.snr_db &&
                    a.gamma == b.gamma && a.theta == b.theta &&
                    a.r0_threshold == b.r0_threshold &&
                    a.weight_grid.size() == b.weight_grid.size();
  if (!same) throw std::invalid_argument("region_dominance: scenarios differ");
  for (size_t i = 0; i < a.weight_grid.size(); ++i)
    if (a.weight_grid[i] != b.weight_grid[i])
      throw std::invalid_argument("region_dominance: weight grids differ");
}

// Upper concave envelope value at x over the given points (sorted by x).
// Returns -inf right of the last point.
double envelope_at(const std::vector<std::pair<double, double>>& hull, double x) {
  if (hull.empty()) return -std::numeric_limits<double>::infinity();
  if (x <= hull.front().first) return hull.front().second;
  for (size_t i = 1; i < hull.size(); ++i) {
    if (x <= hull[i].first) {
      const auto& [x0, y0] = hull[i - 1];
      const auto& [x1, y1] = hull[i];
      const double t = x1 > x0 ? (x - x0) / (x1 - x0) : 0.0;
      return y0 + t * (y1 - y0);
    }
  }
  return -std::numeric_limits<double>::infinity();
}

std::vector<std::pair<double, double>> upper_hull(std::vector<std::pair<double, double>> pts) {
  std::sort(pts.begin(), pts.end());
  std::vector<std::pair<double, double>> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull[hull.size() - 1];
      const double cross =
          (b.first - a.first) * (p.second - a.second) - (b.second - a.second) * (p.first - a.first);
      if (cross >= 0.0)
        hull.pop_back();  // b below the chord a-p
      else
        break;
    }
    if (!hull.empty() && hull.back().first == p.first) {
      if (p.second > hull.back().second) hull.back() = p;
      continue;
    }
    hull.push_back(p);
  }
  return hull;
}

// Best-split WSR from per-user rates; shares restricted to share_users.
std::optional<double> best_wsr_from_report(const RateReport& rep, double r0th,
                                           const Eigen::VectorXd& w,
                                           const std::vector<Eigen::Index>& share_users) {
  if (rep.common_rate < r0th) return std::nullopt;
  double wsr = 0.0;
  for (Eigen::Index k = 0; k < w.size(); ++k)
    wsr += w(k) * rep.private_rates[static_cast<size_t>(k)];
  if (!share_users.empty()) {
    double wmax = 0.0;
    for (Eigen::Index k : share_users) wmax = std::max(wmax, w(k));
    wsr += wmax * (rep.common_rate - r0th);
  }
  return wsr;
}

}  // namespace

std::vector<Eigen::VectorXd> weight_grid() {
  std::vector<Eigen::VectorXd> grid;
  auto push = [&](double exponent) {
    Eigen::VectorXd w(2);
    w << 1.0, std::pow(10.0, exponent);
    grid.push_back(std::move(w));
  };
  push(-3.0);
  for (int i = -20; i <= 20; ++i) push(0.05 * i);
  push(3.0);
  return grid;
}

ChannelSet scenario_channel(const Scenario& s) {
  s.validate();
  if (s.num_users != 2)
    throw std::invalid_argument("scenario_channel: the deterministic channel family is two-user");
  return channel::deterministic_channel(s.nt, s.gamma, s.theta)
      .with_power_budget(scenario_power(s));
}

std::vector<std::size_t> pareto_frontier(const std::vector<RegionPoint>& points) {
  std::vector<std::size_t> ok;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (points[i].status == ao::AoStatus::Ok) ok.push_back(i);
  std::sort(ok.begin(), ok.end(), [&](std::size_t a, std::size_t b) {
    if (points[a].r1 != points[b].r1) return points[a].r1 > points[b].r1;
    if (points[a].r2 != points[b].r2) return points[a].r2 > points[b].r2;
    return a < b;
  });
  std::vector<std::size_t> kept;
  double best_r2 = -std::numeric_limits<double>::infinity();
  for (std::size_t i : ok) {
    if (points[i].r2 > best_r2) {
      kept.push_back(i);
      best_r2 = points[i].r2;
    }
    // ties and exact duplicates are dropped so the frontier is strictly
    // increasing in r1 when walked left to right
  }
  std::reverse(kept.begin(), kept.end());
  return kept;
}

std::vector<RateRegionResult> sweep_all(const ChannelSet& ch, const Scenario& base,
                                        const std::vector<Strategy>& strategy_list,
                                        const ao::AoConfig& config, int parallelism,
                                        bool cross_warm_start) {
  base.validate();
  if (ch.num_users() != 2)
    throw std::invalid_argument("sweep: rate regions are two-user; use wsr_table otherwise");
  if (base.weight_grid.empty()) throw std::invalid_argument("sweep: empty weight grid");

  const auto& grid = base.weight_grid;
  std::vector<std::vector<strategies::StrategyOutcome>> rows(grid.size());
  detail::parallel_for(grid.size(), parallelism, [&](std::size_t wi) {
    ao::AoConfig cfg = config;
    cfg.seed = detail::mix_seed(config.seed, wi);
    rows[wi] = strategies::solve_all(ch, strategy_list, base.r0_threshold, grid[wi], cfg,
                                     cross_warm_start);
  });

  std::vector<RateRegionResult> results;
  for (size_t si = 0; si < strategy_list.size(); ++si) {
    RateRegionResult r;
    r.strategy = strategy_list[si];
    r.scenario = base;
    r.scenario.strategy = strategy_list[si];
    for (std::size_t wi = 0; wi < grid.size(); ++wi)
      r.points.push_back(point_from_outcome(grid[wi], rows[wi][si]));
    r.pareto_frontier = pareto_frontier(r.points);
    results.push_back(std::move(r));
  }
  return results;
}

RateRegionResult sweep(const ChannelSet& ch, const Scenario& scenario, const ao::AoConfig& config,
                       int parallelism, bool cross_warm_start) {
  return sweep_all(ch, scenario, {scenario.strategy}, config, parallelism,
                   cross_warm_start)[0];
}

std::vector<WsrTableRow> wsr_table(const ChannelSet& ch, Strategy strategy, double r0_threshold,
                                   const std::vector<Eigen::VectorXd>& grid,
                                   const ao::AoConfig& config, int parallelism) {
  std::vector<WsrTableRow> rows(grid.size());
  detail::parallel_for(grid.size(), parallelism, [&](std::size_t wi) {
    ao::AoConfig cfg = config;
    cfg.seed = detail::mix_seed(config.seed, wi);
    auto outcome = strategies::solve_strategy(ch, strategy, r0_threshold, grid[wi], cfg);
    rows[wi] = {grid[wi], outcome.status, outcome.solution ? outcome.solution->wsr : 0.0};
  });
  return rows;
}

DominanceReport region_dominance(const RateRegionResult& a, const RateRegionResult& b,
                                 double tol) {
  require_same_scenario(a.scenario, b.scenario);
  if (a.points.size() != b.points.size())
    throw std::invalid_argument("region_dominance: point counts differ");

  DominanceReport rep;
  rep.wsr_delta.assign(a.points.size(), std::numeric_limits<double>::quiet_NaN());
  rep.min_delta = std::numeric_limits<double>::infinity();
  rep.max_delta = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < a.points.size(); ++i) {
    const bool a_ok = a.points[i].status == ao::AoStatus::Ok;
    const bool b_ok = b.points[i].status == ao::AoStatus::Ok;
    if (a_ok && b_ok) {
      rep.wsr_delta[i] = a.points[i].wsr - b.points[i].wsr;
      rep.min_delta = std::min(rep.min_delta, rep.wsr_delta[i]);
      rep.max_delta = std::max(rep.max_delta, rep.wsr_delta[i]);
      ++rep.comparable;
    } else if (b_ok && !a_ok) {
      rep.b_ok_where_a_failed = true;
    }
  }
  if (rep.comparable == 0) {
    rep.min_delta = 0.0;
    rep.max_delta = 0.0;
  }

  // Staircase containment: every ok point of b lies weakly inside the
  // lower-left region of some frontier point of a.
  rep.frontier_contains_b = true;
  for (const auto& q : b.points) {
    if (q.status != ao::AoStatus::Ok) continue;
    bool covered = false;
    for (std::size_t i : a.pareto_frontier) {
      if (a.points[i].r1 >= q.r1 - tol && a.points[i].r2 >= q.r2 - tol) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      rep.frontier_contains_b = false;
      break;
    }
  }

  // Secondary metric: containment in the convex hull of a's frontier
  // augmented with its axis endpoints.
  std::vector<std::pair<double, double>> pts;
  double max_x = 0.0, max_y = 0.0;
  for (std::size_t i : a.pareto_frontier) {
    pts.emplace_back(a.points[i].r1, a.points[i].r2);
    max_x = std::max(max_x, a.points[i].r1);
    max_y = std::max(max_y, a.points[i].r2);
  }
  pts.emplace_back(0.0, max_y);
  pts.emplace_back(max_x, 0.0);
  const auto hull = upper_hull(std::move(pts));
  rep.hull_contains_b = true;
  for (const auto& q : b.points) {
    if (q.status != ao::AoStatus::Ok) continue;
    if (q.r1 > max_x + tol || q.r2 > envelope_at(hull, q.r1) + tol) {
      rep.hull_contains_b = false;
      break;
    }
  }
  return rep;
}

std::optional<double> score_precoder(const ChannelSet& ch, Strategy strategy,
                                     Eigen::Index scsic_first, double r0_threshold,
                                     const Eigen::VectorXd& w, const PrecoderMatrix& p) {
  const RateReport rep = rates::rate_report(ch, p);
  std::vector<Eigen::Index> share_users;
  switch (strategy) {
    case Strategy::Rs:
      for (Eigen::Index k = 0; k < ch.num_users(); ++k) share_users.push_back(k);
      break;
    case Strategy::Mulp:
      break;
    case Strategy::Scsic:
      share_users.push_back(scsic_first);
      break;
  }
  return best_wsr_from_report(rep, r0_threshold, w, share_users);
}

double brute_force_oracle(const ChannelSet& ch, Strategy strategy, double r0_threshold,
                          const Eigen::VectorXd& w, const OracleGrid& grid) {
  const Eigen::Index nt = ch.num_antennas();
  const Eigen::Index K = ch.num_users();
  if (nt > 2 || K > 2)
    throw std::invalid_argument("brute_force_oracle: instance too large (needs Nt <= 2, K <= 2)");
  if (grid.power_steps < 1 || grid.angle_steps < 2 || grid.phase_steps < 1)
    throw std::invalid_argument("brute_force_oracle: degenerate grid spec");

  // Unit directions sqrt-free: (cos a, sin a e^{jb}); global phase dropped.
  std::vector<CVector> dirs;
  if (nt == 1) {
    dirs.push_back(CVector::Ones(1));
  } else {
    CVector e0(2), e1(2);
    e0 << 1.0, 0.0;
    e1 << 0.0, 1.0;
    dirs.push_back(e0);
    dirs.push_back(e1);
    for (int ia = 1; ia + 1 < grid.angle_steps; ++ia) {
      const double a = (std::numbers::pi / 2.0) * ia / (grid.angle_steps - 1);
      for (int ib = 0; ib < grid.phase_steps; ++ib) {
        const double b = 2.0 * std::numbers::pi * ib / grid.phase_steps;
        CVector d(2);
        d << std::cos(a), std::sin(a) * std::polar(1.0, b);
        dirs.push_back(std::move(d));
      }
    }
  }

  // Per-user unit gains per direction.
  const size_t D = dirs.size();
  std::vector<std::array<double, 2>> unit_gain(D);
  for (size_t di = 0; di < D; ++di)
    for (Eigen::Index k = 0; k < K; ++k)
      unit_gain[di][static_cast<size_t>(k)] = std::norm(ch.channel(k).dot(dirs[di]));

  const double pt = ch.power_budget();
  const int S = grid.power_steps;

  // Orders to consider: RS/MULP have no order; SC-SIC enumerates both.
  std::vector<Eigen::Index> orders;
  if (strategy == Strategy::Scsic)
    for (Eigen::Index f = 0; f < K; ++f) orders.push_back(f);
  else
    orders.push_back(-1);

  double best = -std::numeric_limits<double>::infinity();
  const double ln2 = std::numbers::ln2;

  for (Eigen::Index order : orders) {
    // Gains per user per column for a candidate: g[k][j] = q_j * unit.
    // Enumerate direction indexes and simplex powers per active column.
    std::vector<Eigen::Index> cols;  // 0 = common, k+1 = private k
    cols.push_back(0);
    for (Eigen::Index k = 0; k < K; ++k)
      if (strategy != Strategy::Scsic || k != order) cols.push_back(k + 1);
    const size_t C = cols.size();

    std::vector<size_t> dsel(C, 0);
    std::vector<int> psel(C, 0);

    // Recursive enumeration over direction choices per column.
    std::function<void(size_t)> enum_dirs = [&](size_t ci) {
      if (ci == C) {
        // Enumerate integer powers with sum <= S.
        std::function<void(size_t, int)> enum_pow = [&](size_t pi, int left) {
          if (pi == C) {
            // Rates from gains.
            double g[2][3] = {{0, 0, 0}, {0, 0, 0}};
            for (size_t c = 0; c < C; ++c) {
              const double q = pt * psel[c] / S;
              for (Eigen::Index k = 0; k < K; ++k)
                g[k][cols[c]] = q * unit_gain[dsel[c]][static_cast<size_t>(k)];
            }
            double r0 = std::numeric_limits<double>::infinity();
            double priv[2] = {0.0, 0.0};
            for (Eigen::Index k = 0; k < K; ++k) {
              double t_priv = 1.0;
              for (Eigen::Index j = 0; j < K; ++j) t_priv += g[k][j + 1];
              r0 = std::min(r0, std::log1p(g[k][0] / t_priv) / ln2);
              const double own = g[k][k + 1];
              priv[k] = std::log1p(own / (t_priv - own)) / ln2;
            }
            if (r0 < r0_threshold) return;
            double wsr = 0.0;
            switch (strategy) {
              case Strategy::Mulp:
                for (Eigen::Index k = 0; k < K; ++k) wsr += w(k) * priv[k];
                break;
              case Strategy::Rs: {
                double wmax = 0.0;
                for (Eigen::Index k = 0; k < K; ++k) {
                  wsr += w(k) * priv[k];
                  wmax = std::max(wmax, w(k));
                }
                wsr += wmax * (r0 - r0_threshold);
                break;
              }
              case Strategy::Scsic: {
                for (Eigen::Index k = 0; k < K; ++k)
                  if (k != order) wsr += w(k) * priv[k];
                wsr += w(order) * (r0 - r0_threshold);
                break;
              }
            }
            best = std::max(best, wsr);
            return;
          }
          for (int a = 0; a <= left; ++a) {
            psel[pi] = a;
            enum_pow(pi + 1, left - a);
          }
        };
        enum_pow(0, S);
        return;
      }
      for (size_t d = 0; d < D; ++d) {
        dsel[ci] = d;
        enum_dirs(ci + 1);
      }
    };
    enum_dirs(0);
  }
  return best;
}

}  // namespace rsma::region
