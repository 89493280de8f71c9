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

#ifndef STORCUTS_SOC_HPP
#define STORCUTS_SOC_HPP

#include <array>
#include <string>
#include <vector>

#include "storcuts/battery.hpp"

namespace storcuts {

/// Per-period second-order-cone cut data for a tracking setpoint. With
/// x = (p_dis, p_ch, z), the constraint
///   || ((b^T x + 1 + c)/2 ; A x) || <= (1 - b^T x - c)/2
/// is equivalent to z >= cylinder_value(p_dis, p_ch, setpoint).
struct SocCutData {
  double setpoint = 0.0;
  std::array<std::array<double, 3>, 3> mat_a{};  // single nonzero row (1,1,0)
  std::array<double, 3> vec_b{};                 // (-2*ps, 2*ps, -1)
  double scal_c = 0.0;                           // ps^2

  /// Left-hand norm and right-hand side of the norm-form constraint.
  std::pair<double, double> norm_form(double p_dis, double p_ch,
                                      double z) const;
  bool satisfied(double p_dis, double p_ch, double z, double tol = 0.0) const;
};

/// Convex combination certificate: lam * point_d + (1-lam) * point_c
/// reproduces the queried powers exactly with a z-coordinate at most the
/// queried z.
struct HullDecomposition {
  double lam = 1.0;
  std::array<double, 3> point_d{};  // (z, p_dis, 0) on the discharge curve
  std::array<double, 3> point_c{};  // (z, 0, p_ch) on the charge curve
};

/// The parabolic-cylinder quadratic
///   q = p_dis^2 + p_ch^2 + 2 p_dis p_ch - 2 p_dis ps + 2 p_ch ps + ps^2,
/// identically (p_dis - p_ch - ps)^2 + 4 p_dis p_ch.
double cylinder_value(double p_dis, double p_ch, double setpoint);

/// The six coefficients of q in the monomial order
/// (p_dis^2, p_ch^2, p_dis*p_ch, p_dis, p_ch, 1).
std::array<double, 6> cylinder_coefficients(double setpoint);

SocCutData soc_cut(double setpoint);

/// Constructive membership certificate for a point in the cylinder
/// epigraph (z >= q - 1e-10). Throws std::invalid_argument below it.
HullDecomposition hull_decompose(double z, double p_dis, double p_ch,
                                 double setpoint);

/// Sum of per-period cylinder values: a lower bound on any per-period
/// feasible sum of epigraph variables. Diagnostic only.
double aggregate_cylinder_check(const Trajectory& traj,
                                const std::vector<double>& setpoints);

/// CSV export: period,setpoint,q_dd,q_cc,q_dc,q_d,q_c,q_0 per period,
/// 1-based period column.
std::string soc_cuts_to_csv(const std::vector<double>& setpoints);

}  // namespace storcuts

#endif  // STORCUTS_SOC_HPP
