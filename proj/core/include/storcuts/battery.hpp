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

#ifndef STORCUTS_BATTERY_HPP
#define STORCUTS_BATTERY_HPP

#include <optional>
#include <string>
#include <vector>

namespace storcuts {

// Feasibility tolerances, in kW / kWh. The SoC recursion is held to a
// tighter residual than the bound checks.
inline constexpr double kFeasTol = 1e-8;
inline constexpr double kSocRecursionTol = 1e-9;

/// Physical description of one storage unit over a fixed horizon.
///
/// Power is in kW, energy in kWh, the period length `delta` in hours.
struct BatteryParams {
  double p_dis_max = 0.0;  // max discharging power
  double p_ch_max = 0.0;   // max charging power
  double soc_min = 0.0;    // min stored energy
  double soc_max = 0.0;    // max stored energy
  double eta_c = 1.0;      // charging efficiency, in (0,1]
  double eta_d = 1.0;      // discharging efficiency, in (0,1]
  double delta = 1.0;      // period duration, hours
  double soc_init = 0.0;   // stored energy entering period 0
  int horizon = 1;         // number of periods T

  /// Throws std::invalid_argument if any invariant fails.
  void validate() const;
  bool is_valid() const;
};

/// Quantities derived from BatteryParams: constant effective rates, the
/// reachable SoC envelope, and the per-period effective rates implied by it.
/// All vectors have length T and are indexed by 0-based period.
struct EffectiveEnvelope {
  double p_dis_eff = 0.0;  // min(p_dis_max, eta_d*(soc_max-soc_min)/delta)
  double p_ch_eff = 0.0;   // min(p_ch_max, (soc_max-soc_min)/(delta*eta_c))
  std::vector<double> soc_lo;       // lowest reachable SoC entering period k
  std::vector<double> soc_hi;       // highest reachable SoC entering period k
  std::vector<double> p_ch_eff_t;   // max charge in period k given soc_lo[k]
  std::vector<double> p_dis_eff_t;  // max discharge in period k given soc_hi[k]
};

/// One operating schedule. `soc[k]` is the stored energy at the end of
/// period k. `mode`, when present, holds the charge indicators u (values in
/// [0,1]; integral for the mixed-integer set).
struct Trajectory {
  std::vector<double> p_dis;
  std::vector<double> p_ch;
  std::vector<double> soc;
  std::optional<std::vector<double>> mode;
};

enum class FeasibleSet { P, P01, PR };

/// Worst violation per constraint group; `member` iff all are within kFeasTol
/// (kSocRecursionTol for the recursion residual).
struct MembershipReport {
  bool member = false;
  double rate_bound = 0.0;      // kW, power bounds (u-linked for P01/PR)
  double soc_bound = 0.0;       // kWh
  double soc_recursion = 0.0;   // kWh
  double complementarity = 0.0; // kW^2, set P only
  double mode_range = 0.0;      // u outside [0,1] (PR) or {0,1} (P01)
  double nonnegativity = 0.0;   // kW
};

/// Effective maximum discharge and charge rates: the power ratings clipped
/// by what the usable capacity admits within a single period.
std::pair<double, double> effective_rates(const BatteryParams& params);

/// Reachable-SoC envelope and per-period effective rates.
///
/// soc_lo[0] = soc_hi[0] = soc_init; soc_lo steps down by delta*p_dis_eff/eta_d
/// clamped at soc_min, soc_hi steps up by delta*eta_c*p_ch_eff clamped at
/// soc_max. p_ch_eff_t[k] / p_dis_eff_t[k] are the largest single-period
/// charge / discharge consistent with the envelope at k.
EffectiveEnvelope soc_envelope(const BatteryParams& params);

/// Integrates the SoC recursion from soc_init. Bounds are not enforced;
/// membership is a separate check. Throws on length mismatch.
Trajectory simulate_soc(const BatteryParams& params,
                        const std::vector<double>& p_dis,
                        const std::vector<double>& p_ch);

/// Checks a trajectory against one of the three feasible-set descriptions.
/// P01 and PR require a mode vector (throws std::invalid_argument if absent).
MembershipReport membership(const BatteryParams& params, const Trajectory& traj,
                            FeasibleSet which);

/// Simultaneous charge/discharge metrics: number of periods with
/// p_ch*p_dis above `threshold` (kW^2), and the total sum of the products.
std::pair<int, double> violation_metrics(const Trajectory& traj,
                                         double threshold);

}  // namespace storcuts

#endif  // STORCUTS_BATTERY_HPP
