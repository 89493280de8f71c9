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

#include "storcuts/battery.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace storcuts {

void BatteryParams::validate() const {
  auto fail = [](const std::string& msg) {
    throw std::invalid_argument("BatteryParams: " + msg);
  };
  if (!(soc_max > soc_min)) fail("soc_max must exceed soc_min");
  if (!(soc_min <= soc_init && soc_init <= soc_max))
    fail("soc_init outside [soc_min, soc_max]");
  if (!(eta_c > 0.0 && eta_c <= 1.0)) fail("eta_c outside (0,1]");
  if (!(eta_d > 0.0 && eta_d <= 1.0)) fail("eta_d outside (0,1]");
  if (!(delta > 0.0)) fail("delta must be positive");
  if (!(p_dis_max >= 0.0)) fail("p_dis_max must be nonnegative");
  if (!(p_ch_max >= 0.0)) fail("p_ch_max must be nonnegative");
  if (horizon < 1) fail("horizon must be at least 1");
}

bool BatteryParams::is_valid() const {
  try {
    validate();
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

std::pair<double, double> effective_rates(const BatteryParams& p) {
  const double cap = p.soc_max - p.soc_min;
  const double dis = std::min(p.p_dis_max, p.eta_d * cap / p.delta);
  const double ch = std::min(p.p_ch_max, cap / (p.delta * p.eta_c));
  return {dis, ch};
}

EffectiveEnvelope soc_envelope(const BatteryParams& p) {
  p.validate();
  const int T = p.horizon;
  EffectiveEnvelope env;
  std::tie(env.p_dis_eff, env.p_ch_eff) = effective_rates(p);
  env.soc_lo.assign(T, 0.0);
  env.soc_hi.assign(T, 0.0);
  env.soc_lo[0] = env.soc_hi[0] = p.soc_init;
  for (int k = 1; k < T; ++k) {
    env.soc_lo[k] =
        std::max(env.soc_lo[k - 1] - p.delta * env.p_dis_eff / p.eta_d, p.soc_min);
    env.soc_hi[k] =
        std::min(env.soc_hi[k - 1] + p.delta * p.eta_c * env.p_ch_eff, p.soc_max);
  }
  env.p_ch_eff_t.assign(T, 0.0);
  env.p_dis_eff_t.assign(T, 0.0);
  for (int k = 0; k < T; ++k) {
    env.p_ch_eff_t[k] = std::min(
        env.p_ch_eff,
        std::max(0.0, (p.soc_max - env.soc_lo[k]) / (p.delta * p.eta_c)));
    env.p_dis_eff_t[k] = std::min(
        env.p_dis_eff,
        std::max(0.0, (env.soc_hi[k] - p.soc_min) * p.eta_d / p.delta));
  }
  return env;
}

Trajectory simulate_soc(const BatteryParams& p, const std::vector<double>& p_dis,
                        const std::vector<double>& p_ch) {
  const int T = p.horizon;
  if (static_cast<int>(p_dis.size()) != T || static_cast<int>(p_ch.size()) != T)
    throw std::invalid_argument("simulate_soc: vector length mismatch");
  Trajectory traj;
  traj.p_dis = p_dis;
  traj.p_ch = p_ch;
  traj.soc.assign(T, 0.0);
  double s = p.soc_init;
  for (int t = 0; t < T; ++t) {
    s += p.delta * (p.eta_c * p_ch[t] - p_dis[t] / p.eta_d);
    traj.soc[t] = s;
  }
  return traj;
}

MembershipReport membership(const BatteryParams& p, const Trajectory& traj,
                            FeasibleSet which) {
  const int T = p.horizon;
  if (static_cast<int>(traj.p_dis.size()) != T ||
      static_cast<int>(traj.p_ch.size()) != T ||
      static_cast<int>(traj.soc.size()) != T)
    throw std::invalid_argument("membership: trajectory length mismatch");
  const bool needs_mode = (which != FeasibleSet::P);
  if (needs_mode && !traj.mode.has_value())
    throw std::invalid_argument("membership: mode vector required for P01/PR");
  if (needs_mode && static_cast<int>(traj.mode->size()) != T)
    throw std::invalid_argument("membership: mode vector length mismatch");

  MembershipReport rep;
  double s_prev = p.soc_init;
  for (int t = 0; t < T; ++t) {
    const double pd = traj.p_dis[t];
    const double pc = traj.p_ch[t];
    rep.nonnegativity = std::max({rep.nonnegativity, -pd, -pc});
    if (needs_mode) {
      const double u = (*traj.mode)[t];
      rep.rate_bound = std::max(rep.rate_bound, pd - p.p_dis_max * (1.0 - u));
      rep.rate_bound = std::max(rep.rate_bound, pc - p.p_ch_max * u);
      if (which == FeasibleSet::P01) {
        rep.mode_range = std::max(rep.mode_range, std::abs(u - std::round(u)));
      }
      rep.mode_range = std::max({rep.mode_range, -u, u - 1.0});
    } else {
      rep.rate_bound = std::max(rep.rate_bound, pd - p.p_dis_max);
      rep.rate_bound = std::max(rep.rate_bound, pc - p.p_ch_max);
      rep.complementarity = std::max(rep.complementarity, std::abs(pd * pc));
    }
    rep.soc_bound = std::max({rep.soc_bound, p.soc_min - traj.soc[t],
                              traj.soc[t] - p.soc_max});
    const double s_expect = s_prev + p.delta * (p.eta_c * pc - pd / p.eta_d);
    rep.soc_recursion =
        std::max(rep.soc_recursion, std::abs(traj.soc[t] - s_expect));
    s_prev = traj.soc[t];
  }
  rep.member = rep.rate_bound <= kFeasTol && rep.soc_bound <= kFeasTol &&
               rep.soc_recursion <= kSocRecursionTol &&
               rep.complementarity <= kFeasTol && rep.mode_range <= kFeasTol &&
               rep.nonnegativity <= kFeasTol;
  return rep;
}

std::pair<int, double> violation_metrics(const Trajectory& traj,
                                         double threshold) {
  int count = 0;
  double sum = 0.0;
  const std::size_t n = std::min(traj.p_dis.size(), traj.p_ch.size());
  for (std::size_t t = 0; t < n; ++t) {
    const double prod = traj.p_ch[t] * traj.p_dis[t];
    sum += prod;
    if (prod > threshold) ++count;
  }
  return {count, sum};
}

}  // namespace storcuts
