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

#include "storcuts/soc.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace storcuts {

double cylinder_value(double p_dis, double p_ch, double setpoint) {
  return p_dis * p_dis + p_ch * p_ch + 2.0 * p_dis * p_ch -
         2.0 * p_dis * setpoint + 2.0 * p_ch * setpoint + setpoint * setpoint;
}

std::array<double, 6> cylinder_coefficients(double setpoint) {
  return {1.0, 1.0, 2.0, -2.0 * setpoint, 2.0 * setpoint,
          setpoint * setpoint};
}

namespace {

// The cylinder is the lam = 2 member of the quadric pencil spanned by the
// tracking paraboloid and the complementarity bilinear form. Checked once
// against the expanded coefficients.
bool pencil_member_matches() {
  const double ps = 0.7;
  // Paraboloid: p_d^2 + p_c^2 - 2 p_d ps + 2 p_c ps + ps^2 - z, bilinear
  // form: p_d p_c (coefficient 1 in the dc slot of the symmetric matrix
  // doubles under lam = 2).
  const std::array<double, 6> parab = {1.0, 1.0, 0.0, -2.0 * ps, 2.0 * ps,
                                       ps * ps};
  const double lam = 2.0;
  std::array<double, 6> pencil = parab;
  pencil[2] += lam * 1.0;
  const std::array<double, 6> q = cylinder_coefficients(ps);
  for (int i = 0; i < 6; ++i)
    if (std::fabs(pencil[i] - q[i]) > 1e-15) return false;
  return true;
}

const bool pencil_checked = [] {
  if (!pencil_member_matches())
    throw std::logic_error("cylinder quadratic drifted from its pencil form");
  return true;
}();

}  // namespace

std::pair<double, double> SocCutData::norm_form(double p_dis, double p_ch,
                                                double z) const {
  const double bx =
      vec_b[0] * p_dis + vec_b[1] * p_ch + vec_b[2] * z;
  double row0 = (bx + 1.0 + scal_c) / 2.0;
  double a0 = mat_a[0][0] * p_dis + mat_a[0][1] * p_ch + mat_a[0][2] * z;
  const double lhs = std::sqrt(row0 * row0 + a0 * a0);
  const double rhs = 0.5 * (1.0 - bx - scal_c);
  return {lhs, rhs};
}

bool SocCutData::satisfied(double p_dis, double p_ch, double z,
                           double tol) const {
  const auto [lhs, rhs] = norm_form(p_dis, p_ch, z);
  return lhs <= rhs + tol;
}

SocCutData soc_cut(double setpoint) {
  (void)pencil_checked;
  SocCutData cut;
  cut.setpoint = setpoint;
  cut.mat_a = {{{1.0, 1.0, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}}};
  cut.vec_b = {-2.0 * setpoint, 2.0 * setpoint, -1.0};
  cut.scal_c = setpoint * setpoint;
  return cut;
}

HullDecomposition hull_decompose(double z, double p_dis, double p_ch,
                                 double setpoint) {
  if (p_dis < 0.0 || p_ch < 0.0)
    throw std::invalid_argument("hull_decompose: negative power");
  const double q = cylinder_value(p_dis, p_ch, setpoint);
  if (z < q - 1e-10)
    throw std::invalid_argument("hull_decompose: point below the cylinder");
  HullDecomposition dec;
  const double p0 = p_dis + p_ch;
  dec.lam = (p0 > 0.0) ? p_dis / p0 : 1.0;
  dec.point_d = {p0 * p0 - 2.0 * p0 * setpoint + setpoint * setpoint, p0, 0.0};
  dec.point_c = {p0 * p0 + 2.0 * p0 * setpoint + setpoint * setpoint, 0.0, p0};
  return dec;
}

double aggregate_cylinder_check(const Trajectory& traj,
                                const std::vector<double>& setpoints) {
  if (traj.p_dis.size() != setpoints.size() ||
      traj.p_ch.size() != setpoints.size())
    throw std::invalid_argument("aggregate_cylinder_check: length mismatch");
  double total = 0.0;
  for (std::size_t t = 0; t < setpoints.size(); ++t)
    total += cylinder_value(traj.p_dis[t], traj.p_ch[t], setpoints[t]);
  return total;
}

std::string soc_cuts_to_csv(const std::vector<double>& setpoints) {
  std::string out = "period,setpoint,q_dd,q_cc,q_dc,q_d,q_c,q_0\n";
  char buf[224];
  for (std::size_t t = 0; t < setpoints.size(); ++t) {
    const auto q = cylinder_coefficients(setpoints[t]);
    std::snprintf(buf, sizeof(buf),
                  "%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", t + 1,
                  setpoints[t], q[0], q[1], q[2], q[3], q[4], q[5]);
    out += buf;
  }
  return out;
}

}  // namespace storcuts
