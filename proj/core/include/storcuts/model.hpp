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

#ifndef STORCUTS_MODEL_HPP
#define STORCUTS_MODEL_HPP

#include <string>
#include <vector>

#include "storcuts/battery.hpp"
#include "storcuts/cuts.hpp"
#include "storcuts/lp.hpp"
#include "storcuts/qp.hpp"

namespace storcuts {

enum class ObjectiveKind { Linear, TrackingQP, TrackingCylinderQP };

enum class Preset { MILP, MIQP, HCHLP, TLP, TLPu, TLPSOC };

std::string to_string(Preset preset);
Preset preset_from_string(const std::string& name);

enum class SolveStatus { Optimal, Infeasible, Unbounded, IterLimit };

/// One assembled optimization instance over per-period charge/discharge
/// power, optional mode variables and optional epigraph variables.
struct RelaxationModel {
  BatteryParams params;
  int num_periods = 0;
  bool has_u = false;
  bool u_integral = false;  // solve over integral modes (branch and bound)
  bool has_z = false;       // explicit epigraph variables (outer approximation)
  bool soc_chain = false;   // native SoC bound rows
  bool u_link = false;      // p_dis <= rate*(1-u), p_ch <= rate*u rows
  std::vector<LinearCut> cuts;
  std::vector<double> ch_hi, dis_hi;  // variable upper bounds (lo = 0)

  ObjectiveKind objective = ObjectiveKind::Linear;
  bool maximize = false;           // Linear objective only
  std::vector<double> prices;      // Linear
  std::vector<double> setpoints;   // TrackingQP / TrackingCylinderQP
};

struct SolveReport {
  SolveStatus status = SolveStatus::IterLimit;
  double objective = 0.0;  // in the model's own sense
  Trajectory trajectory;
  std::pair<int, double> violation{0, 0.0};  // threshold 1e-4 kW^2
  int iterations = 0;
  double wall_time_ms = 0.0;
  long nodes = 0;      // branch and bound
  double gap = 0.0;    // |incumbent - best bound|
  double max_residual = 0.0;

  /// Scheduling problems maximize revenue; this is the minimization-form
  /// value of the same solution.
  double min_form_objective() const { return -objective; }
};

struct ProblemInstance {
  enum class Kind { Scheduling, Tracking };
  Kind kind = Kind::Scheduling;
  std::vector<double> values;  // prices or setpoints, length T
};

/// Assembles a named formulation. MILP/MIQP carry the native mixed-integer
/// description; HCHLP the baseline cut set; TLP the filtered window cuts;
/// TLPu adds the mode-variable cuts and linking rows with relaxed modes;
/// TLPSOC the substituted cylinder objective over the TLP polytope.
/// Throws std::invalid_argument when the instance kind does not match the
/// preset's objective.
RelaxationModel build_preset(const BatteryParams& params, Preset preset,
                             const ProblemInstance& instance);

/// Dispatches on the model: branch and bound when modes are integral,
/// outer approximation when epigraph variables are present, otherwise the
/// simplex or the active-set method. Wall time is recorded in the report.
SolveReport solve_model(const RelaxationModel& model);

/// Continuous relaxation with mode bounds [u_lo, u_hi] per period (empty
/// vectors mean [0,1]).
SolveReport solve_relaxation(const RelaxationModel& model,
                             const std::vector<double>& u_lo = {},
                             const std::vector<double>& u_hi = {});

/// Explicit-epigraph solve of a TrackingCylinderQP model by LP outer
/// approximation of the per-period quadratics.
SolveReport solve_epigraph(const RelaxationModel& model);

struct BBOptions {
  long node_budget = 200000;
  double abs_gap = 1e-6;
  double int_tol = 1e-6;
};

/// Best-first branch and bound over the mode variables; most-fractional
/// branching with earliest-period tie-break. Falls back to exhaustive
/// pattern enumeration past 4*2^T nodes when T <= 12.
SolveReport solve_bb(const RelaxationModel& model, const BBOptions& opts = {});

/// Reference solve: fixes every pattern in {0,1}^T in turn.
SolveReport solve_exhaustive(const RelaxationModel& model);

}  // namespace storcuts

#endif  // STORCUTS_MODEL_HPP
