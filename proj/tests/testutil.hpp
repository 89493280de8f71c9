// Copyright 2026 The storcuts Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STORCUTS_TESTS_TESTUTIL_HPP
#define STORCUTS_TESTS_TESTUTIL_HPP

#include <random>
#include <vector>

#include "storcuts/battery.hpp"

namespace storcuts::testutil {

// The toy battery used across the examples: symmetric 10 kW ratings,
// 5 kWh usable, lossless, hourly periods.
inline BatteryParams b1(double soc_init = 0.0, int horizon = 3) {
  BatteryParams p;
  p.p_dis_max = 10.0;
  p.p_ch_max = 10.0;
  p.soc_min = 0.0;
  p.soc_max = 5.0;
  p.eta_c = 1.0;
  p.eta_d = 1.0;
  p.delta = 1.0;
  p.soc_init = soc_init;
  p.horizon = horizon;
  return p;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// General random battery: losses, asymmetric rates, interior or boundary
// start level.
inline BatteryParams random_battery(std::mt19937_64& rng, int horizon) {
  BatteryParams p;
  p.soc_min = uniform(rng, 0.0, 3.0);
  const double cap = uniform(rng, 2.0, 30.0);
  p.soc_max = p.soc_min + cap;
  p.eta_c = uniform(rng, 0.8, 1.0);
  p.eta_d = uniform(rng, 0.8, 1.0);
  p.delta = std::uniform_int_distribution<int>(0, 1)(rng) ? 1.0 : 0.5;
  const double cap_rate_c = cap / (p.delta * p.eta_c);
  const double cap_rate_d = p.eta_d * cap / p.delta;
  p.p_ch_max = uniform(rng, 0.2, 1.5) * cap_rate_c;
  p.p_dis_max = uniform(rng, 0.2, 1.5) * cap_rate_d;
  p.soc_init = p.soc_min + uniform(rng, 0.0, 1.0) * cap;
  p.horizon = horizon;
  return p;
}

// Battery family for facet counting: interior start level and fill/empty
// times above one period, the regime where the window inequalities are
// facet-defining.
inline BatteryParams random_facet_battery(std::mt19937_64& rng, int horizon) {
  BatteryParams p;
  p.soc_min = uniform(rng, 0.0, 2.0);
  const double cap = uniform(rng, 4.0, 20.0);
  p.soc_max = p.soc_min + cap;
  p.eta_c = uniform(rng, 0.85, 1.0);
  p.eta_d = uniform(rng, 0.85, 1.0);
  p.delta = 1.0;
  p.soc_init = p.soc_min + uniform(rng, 0.3, 0.7) * cap;
  // Rates sized so filling from the lowest reachable level and emptying
  // from the highest take more than one period.
  const double room_up = p.soc_max - p.soc_init;
  const double room_dn = p.soc_init - p.soc_min;
  p.p_ch_max = uniform(rng, 0.45, 0.9) * (room_up + cap) / (2.0 * p.eta_c);
  p.p_dis_max = uniform(rng, 0.45, 0.9) * p.eta_d * (room_dn + cap) / 2.0;
  p.horizon = horizon;
  return p;
}

inline std::vector<double> random_prices(std::mt19937_64& rng, int horizon,
                                         double neg_share = 0.3) {
  std::vector<double> prices(horizon);
  for (int t = 0; t < horizon; ++t) {
    const bool negative = uniform(rng, 0.0, 1.0) < neg_share;
    prices[t] = negative ? uniform(rng, -60.0, -1.0) : uniform(rng, 1.0, 90.0);
  }
  return prices;
}

inline std::vector<double> random_setpoints(std::mt19937_64& rng, int horizon,
                                            double scale) {
  std::vector<double> s(horizon);
  for (int t = 0; t < horizon; ++t) s[t] = uniform(rng, -scale, scale);
  return s;
}

}  // namespace storcuts::testutil

#endif  // STORCUTS_TESTS_TESTUTIL_HPP
