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

#ifndef STORCUTS_CUTS_HPP
#define STORCUTS_CUTS_HPP

#include <string>
#include <utility>
#include <vector>

#include "storcuts/battery.hpp"

namespace storcuts {

enum class CutFamily {
  WindowCharge,
  WindowDischarge,
  UCharge,
  UDischarge,
  AnchorNoSelf,
  AnchorWithSelf,
  PozoCharge,
  PozoDischarge,
  SingleperiodBox,
};

std::string to_string(CutFamily family);

/// One valid inequality lhs <= rhs over the charge / discharge / mode
/// variables. Coefficient maps are sparse, sorted by period (0-based), and
/// hold no exact zeros.
struct LinearCut {
  std::vector<std::pair<int, double>> coeff_ch;
  std::vector<std::pair<int, double>> coeff_dis;
  std::vector<std::pair<int, double>> coeff_u;
  double rhs = 0.0;
  CutFamily family = CutFamily::WindowCharge;
  int t = 0;          // 0-based window start
  int tau_bar = 0;    // window length - 1
  int tau_star = -1;  // anchor offset, -1 when not applicable

  /// lhs value at a point (mode may be empty when coeff_u is empty).
  double lhs(const std::vector<double>& p_ch, const std::vector<double>& p_dis,
             const std::vector<double>& u = {}) const;
  double violation(const std::vector<double>& p_ch,
                   const std::vector<double>& p_dis,
                   const std::vector<double>& u = {}) const {
    return lhs(p_ch, p_dis, u) - rhs;
  }
};

/// Window coefficients: c/d are the per-period greedy charge / discharge
/// amounts from the envelope start levels, cbar/dbar the full-capacity
/// variants, rho/rhobar the discharge (charge) credit terms of the window
/// inequalities. Indexing is 0-based throughout: c(t0, k) spans periods
/// t0..t0+k.
class CoefficientTable {
 public:
  explicit CoefficientTable(const BatteryParams& params);

  int horizon() const { return T_; }
  const EffectiveEnvelope& envelope() const { return env_; }

  double c(int t0, int k) const { return c_[t0][k]; }
  double d(int t0, int k) const { return d_[t0][k]; }
  double cbar(int k) const { return cbar_[k]; }
  double dbar(int k) const { return dbar_[k]; }
  double sum_c(int t0, int from, int to) const;    // sum over [from, to]
  double sum_d(int t0, int from, int to) const;
  double sum_cbar(int count) const;                // sum over [0, count)
  double sum_dbar(int count) const;

  double rho_c(int t0, int tau, int k) const;
  double rho_d(int t0, int tau, int k) const;

  /// Coefficient on p_dis (p_ch) in the charge (discharge) window cut.
  /// Returns false when the term must be dropped: positive rho over a
  /// period frozen by the envelope.
  bool rhobar_c(int t0, int tau, int k, double* coeff) const;
  bool rhobar_d(int t0, int tau, int k, double* coeff) const;

  /// Closed-form cumulative charge when offset tau alone discharges,
  /// everything else charges, starting from soc_lo[t0]; and its discharge
  /// mirror from soc_hi[t0].
  double fbar_singleton(int t0, int tau, int k) const;
  double gbar_singleton(int t0, int tau, int k) const;

 private:
  int T_;
  BatteryParams params_;
  EffectiveEnvelope env_;
  std::vector<std::vector<double>> c_, d_;  // [t0][k]
  std::vector<double> cbar_, dbar_;
};

/// All window inequalities for every start t0 and length k+1, charge and
/// discharge side. Length-1 cuts with both per-period rates positive are
/// emitted once, normalized, as SingleperiodBox. Duplicates removed.
std::vector<LinearCut> gen_window_cuts(const BatteryParams& params);

/// Mode-variable inequality pair per (t0, k).
std::vector<LinearCut> gen_u_cuts(const BatteryParams& params);

/// The two single-anchor inequalities for one (t0, k, tau_star); gains come
/// from the closed-form window functions at the envelope start level.
std::vector<LinearCut> gen_anchor_cuts(const BatteryParams& params, int t0,
                                       int k, int tau_star);

/// Prior-work baseline: cumulative cuts anchored at the first period plus
/// the per-period box cuts.
std::vector<LinearCut> gen_pozo_cuts(const BatteryParams& params);

/// Drops window cuts dominated by the per-period box cuts; the drop range
/// per start period comes from the number of periods needed to fully
/// charge (discharge) from the envelope level.
std::vector<LinearCut> redundancy_filter(const std::vector<LinearCut>& cuts,
                                         const BatteryParams& params);

/// Removes duplicate cuts (exact coefficient-tuple match after normalizing
/// by a positive rhs).
std::vector<LinearCut> dedup_cuts(const std::vector<LinearCut>& cuts);

struct ValidityReport {
  bool pass = false;
  double max_violation = 0.0;
  int worst_cut = -1;
  long points_checked = 0;
};

/// Checks every cut at every enumerated vertex of each fixed-mode polytope
/// (horizon at most 4). Mode-variable cuts see the originating integral
/// pattern. Pass iff no violation exceeds 1e-8.
ValidityReport validate_cuts(const std::vector<LinearCut>& cuts,
                             const BatteryParams& params);

struct FacetCertificate {
  int tight_count = 0;
  int affine_rank = 0;
  bool skipped = false;  // redundant cuts are not certified
  bool pass = false;     // tight_count >= 2*(tau_bar+1)
};

/// Counts distinct enumerated vertices (deduplicated across mode patterns)
/// where the cut holds with equality, and the affine rank of that tight
/// set. Horizon at most 4.
FacetCertificate facet_certificate(const LinearCut& cut,
                                   const BatteryParams& params);

/// Cut pool export, one row per nonzero coefficient:
/// family,t,tau_bar,tau_star,var_kind,period,coeff,rhs with 1-based t and
/// period columns.
std::string cuts_to_csv(const std::vector<LinearCut>& cuts);

}  // namespace storcuts

#endif  // STORCUTS_CUTS_HPP
