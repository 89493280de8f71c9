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

#include "storcuts/model.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "storcuts/soc.hpp"

namespace storcuts {

std::string to_string(Preset preset) {
  switch (preset) {
    case Preset::MILP: return "MILP";
    case Preset::MIQP: return "MIQP";
    case Preset::HCHLP: return "HCH-LP";
    case Preset::TLP: return "TLP";
    case Preset::TLPu: return "TLP+u";
    case Preset::TLPSOC: return "TLP+SOC";
  }
  return "?";
}

Preset preset_from_string(const std::string& name) {
  if (name == "MILP") return Preset::MILP;
  if (name == "MIQP") return Preset::MIQP;
  if (name == "HCHLP" || name == "HCH-LP") return Preset::HCHLP;
  if (name == "TLP") return Preset::TLP;
  if (name == "TLPu" || name == "TLP+u") return Preset::TLPu;
  if (name == "TLPSOC" || name == "TLP+SOC") return Preset::TLPSOC;
  throw std::invalid_argument("unknown preset: " + name);
}

namespace {

// Variable layout: p_ch 0..T-1, p_dis T..2T-1, then u, then z.
struct Layout {
  int T = 0;
  bool has_u = false, has_z = false;
  int ch(int t) const { return t; }
  int dis(int t) const { return T + t; }
  int u(int t) const { return 2 * T + t; }
  int z(int t) const { return (has_u ? 3 : 2) * T + t; }
  int total() const { return (2 + (has_u ? 1 : 0) + (has_z ? 1 : 0)) * T; }
};

lp::Row cut_to_row(const LinearCut& cut, const Layout& lay) {
  lp::Row row;
  row.sense = lp::RowSense::LE;
  row.rhs = cut.rhs;
  for (auto [t, c] : cut.coeff_ch) row.coeffs.push_back({lay.ch(t), c});
  for (auto [t, c] : cut.coeff_dis) row.coeffs.push_back({lay.dis(t), c});
  for (auto [t, c] : cut.coeff_u) row.coeffs.push_back({lay.u(t), c});
  return row;
}

// Shared constraint assembly: bounds, cuts, SoC chain and linking rows.
void assemble(const RelaxationModel& model, const std::vector<double>& u_lo,
              const std::vector<double>& u_hi, const Layout& lay,
              std::vector<double>* lo, std::vector<double>* hi,
              std::vector<lp::Row>* rows) {
  const int T = model.num_periods;
  const BatteryParams& p = model.params;
  lo->assign(lay.total(), 0.0);
  hi->assign(lay.total(), lp::kInf);
  for (int t = 0; t < T; ++t) {
    (*hi)[lay.ch(t)] = model.ch_hi[t];
    (*hi)[lay.dis(t)] = model.dis_hi[t];
  }
  if (model.has_u) {
    for (int t = 0; t < T; ++t) {
      (*lo)[lay.u(t)] = u_lo.empty() ? 0.0 : u_lo[t];
      (*hi)[lay.u(t)] = u_hi.empty() ? 1.0 : u_hi[t];
    }
  }
  for (const LinearCut& cut : model.cuts) {
    if (!model.has_u && !cut.coeff_u.empty())
      throw std::invalid_argument(
          "model: cut references mode variables the model does not have");
    rows->push_back(cut_to_row(cut, lay));
  }
  if (model.soc_chain) {
    for (int k = 0; k < T; ++k) {
      lp::Row up, dn;
      up.sense = lp::RowSense::LE;
      up.rhs = p.soc_max - p.soc_init;
      dn.sense = lp::RowSense::GE;
      dn.rhs = p.soc_min - p.soc_init;
      for (int j = 0; j <= k; ++j) {
        up.coeffs.push_back({lay.ch(j), p.delta * p.eta_c});
        up.coeffs.push_back({lay.dis(j), -p.delta / p.eta_d});
      }
      dn.coeffs = up.coeffs;
      rows->push_back(std::move(up));
      rows->push_back(std::move(dn));
    }
  }
  if (model.u_link) {
    for (int t = 0; t < T; ++t) {
      lp::Row dis_row;  // p_dis + P^d u <= P^d
      dis_row.sense = lp::RowSense::LE;
      dis_row.rhs = p.p_dis_max;
      dis_row.coeffs = {{lay.dis(t), 1.0}, {lay.u(t), p.p_dis_max}};
      rows->push_back(std::move(dis_row));
      lp::Row ch_row;  // p_ch - P^c u <= 0
      ch_row.sense = lp::RowSense::LE;
      ch_row.rhs = 0.0;
      ch_row.coeffs = {{lay.ch(t), 1.0}, {lay.u(t), -p.p_ch_max}};
      rows->push_back(std::move(ch_row));
    }
  }
}

SolveReport finish_report(const RelaxationModel& model, SolveStatus status,
                          double objective_model_sense,
                          const std::vector<double>& x, const Layout& lay,
                          int iterations, double residual) {
  SolveReport rep;
  rep.status = status;
  rep.iterations = iterations;
  rep.max_residual = residual;
  if (status != SolveStatus::Optimal && x.empty()) return rep;
  const int T = model.num_periods;
  std::vector<double> p_ch(T, 0.0), p_dis(T, 0.0);
  for (int t = 0; t < T; ++t) {
    p_ch[t] = x[lay.ch(t)];
    p_dis[t] = x[lay.dis(t)];
  }
  rep.trajectory = simulate_soc(model.params, p_dis, p_ch);
  if (model.has_u) {
    std::vector<double> u(T);
    for (int t = 0; t < T; ++t) u[t] = x[lay.u(t)];
    rep.trajectory.mode = std::move(u);
  }
  rep.violation = violation_metrics(rep.trajectory, 1e-4);
  rep.objective = objective_model_sense;
  return rep;
}

double tracking_constant(const RelaxationModel& model) {
  double c0 = 0.0;
  for (double s : model.setpoints) c0 += s * s;
  return c0;
}

}  // namespace

SolveReport solve_relaxation(const RelaxationModel& model,
                             const std::vector<double>& u_lo,
                             const std::vector<double>& u_hi) {
  const auto start = std::chrono::steady_clock::now();
  Layout lay{model.num_periods, model.has_u, false};
  std::vector<double> lo, hi;
  std::vector<lp::Row> rows;
  assemble(model, u_lo, u_hi, lay, &lo, &hi, &rows);

  SolveReport rep;
  if (model.objective == ObjectiveKind::Linear) {
    lp::Problem prob;
    prob.num_vars = lay.total();
    prob.lo = std::move(lo);
    prob.hi = std::move(hi);
    prob.rows = std::move(rows);
    prob.objective.assign(prob.num_vars, 0.0);
    const double sign = model.maximize ? -1.0 : 1.0;
    for (int t = 0; t < lay.T; ++t) {
      // Revenue lambda*(p_dis - p_ch), minimized as its negation.
      prob.objective[lay.dis(t)] = sign * model.prices[t];
      prob.objective[lay.ch(t)] = -sign * model.prices[t];
    }
    const lp::Result res = lp::solve(prob);
    SolveStatus st = SolveStatus::IterLimit;
    switch (res.status) {
      case lp::Status::Optimal: st = SolveStatus::Optimal; break;
      case lp::Status::Infeasible: st = SolveStatus::Infeasible; break;
      case lp::Status::Unbounded: st = SolveStatus::Unbounded; break;
      case lp::Status::IterLimit: st = SolveStatus::IterLimit; break;
    }
    const double obj = model.maximize ? -res.objective : res.objective;
    rep = finish_report(model, st, obj, res.x, lay, res.iterations,
                        res.max_residual);
  } else {
    qp::Problem prob;
    prob.num_vars = lay.total();
    prob.lo = std::move(lo);
    prob.hi = std::move(hi);
    prob.rows = std::move(rows);
    prob.hessian.assign(static_cast<std::size_t>(prob.num_vars) *
                            prob.num_vars,
                        0.0);
    prob.linear.assign(prob.num_vars, 0.0);
    prob.obj_offset = tracking_constant(model);
    const double off_diag =
        model.objective == ObjectiveKind::TrackingCylinderQP ? 2.0 : -2.0;
    for (int t = 0; t < lay.T; ++t) {
      const int d = lay.dis(t), c = lay.ch(t);
      prob.h(d, d) = 2.0;
      prob.h(c, c) = 2.0;
      prob.h(d, c) = off_diag;
      prob.h(c, d) = off_diag;
      prob.linear[d] = -2.0 * model.setpoints[t];
      prob.linear[c] = 2.0 * model.setpoints[t];
    }
    const qp::Result res = qp::solve(prob);
    SolveStatus st = SolveStatus::IterLimit;
    switch (res.status) {
      case qp::Status::Optimal: st = SolveStatus::Optimal; break;
      case qp::Status::Infeasible: st = SolveStatus::Infeasible; break;
      case qp::Status::IterLimit: st = SolveStatus::IterLimit; break;
    }
    rep = finish_report(model, st, res.objective, res.x, lay, res.iterations,
                        res.max_residual);
  }
  rep.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                start)
          .count();
  return rep;
}

SolveReport solve_epigraph(const RelaxationModel& model) {
  if (model.objective != ObjectiveKind::TrackingCylinderQP)
    throw std::invalid_argument("solve_epigraph: cylinder objective required");
  const auto start = std::chrono::steady_clock::now();
  const int T = model.num_periods;
  Layout lay{T, model.has_u, true};
  std::vector<double> lo, hi;
  std::vector<lp::Row> rows;
  assemble(model, {}, {}, lay, &lo, &hi, &rows);

  lp::Problem prob;
  prob.num_vars = lay.total();
  prob.lo = std::move(lo);
  prob.hi = std::move(hi);
  prob.rows = std::move(rows);
  prob.objective.assign(prob.num_vars, 0.0);
  for (int t = 0; t < T; ++t) prob.objective[lay.z(t)] = 1.0;

  auto add_tangent = [&](int t, double pd, double pc) {
    // z_t >= q(pd,pc) + grad_q . (x - (pd,pc))
    const double ps = model.setpoints[t];
    const double q = cylinder_value(pd, pc, ps);
    const double gd = 2.0 * pd + 2.0 * pc - 2.0 * ps;
    const double gc = 2.0 * pc + 2.0 * pd + 2.0 * ps;
    lp::Row row;
    row.sense = lp::RowSense::LE;
    row.coeffs = {{lay.dis(t), gd}, {lay.ch(t), gc}, {lay.z(t), -1.0}};
    row.rhs = gd * pd + gc * pc - q;
    prob.rows.push_back(std::move(row));
  };
  for (int t = 0; t < T; ++t) add_tangent(t, 0.0, 0.0);

  SolveReport rep;
  double best_ub = lp::kInf;
  std::vector<double> best_x;
  int total_iters = 0;
  for (int round = 0; round < 400; ++round) {
    const lp::Result res = lp::solve(prob);
    total_iters += res.iterations;
    if (res.status != lp::Status::Optimal) {
      rep.status = res.status == lp::Status::Infeasible
                       ? SolveStatus::Infeasible
                       : SolveStatus::IterLimit;
      rep.iterations = total_iters;
      return rep;
    }
    double ub = 0.0;
    double worst = 0.0;
    for (int t = 0; t < T; ++t) {
      const double q = cylinder_value(res.x[lay.dis(t)], res.x[lay.ch(t)],
                                      model.setpoints[t]);
      ub += q;
      worst = std::max(worst, q - res.x[lay.z(t)]);
    }
    if (ub < best_ub) {
      best_ub = ub;
      best_x = res.x;
    }
    const double lb = res.objective;
    if (best_ub - lb <= 1e-9 * (1.0 + std::fabs(best_ub)) || worst <= 1e-10) {
      rep = finish_report(model, SolveStatus::Optimal, best_ub, best_x, lay,
                          total_iters, res.max_residual);
      rep.gap = best_ub - lb;
      rep.wall_time_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
      return rep;
    }
    for (int t = 0; t < T; ++t)
      add_tangent(t, res.x[lay.dis(t)], res.x[lay.ch(t)]);
  }
  rep = finish_report(model, SolveStatus::IterLimit, best_ub, best_x, lay,
                      total_iters, 0.0);
  rep.wall_time_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  return rep;
}

SolveReport solve_model(const RelaxationModel& model) {
  if (model.u_integral) return solve_bb(model);
  if (model.has_z) return solve_epigraph(model);
  return solve_relaxation(model);
}

RelaxationModel build_preset(const BatteryParams& params, Preset preset,
                             const ProblemInstance& instance) {
  params.validate();
  const int T = params.horizon;
  if (static_cast<int>(instance.values.size()) != T)
    throw std::invalid_argument("build_preset: instance length mismatch");
  const bool tracking = instance.kind == ProblemInstance::Kind::Tracking;
  if ((preset == Preset::MIQP || preset == Preset::TLPSOC) && !tracking)
    throw std::invalid_argument("build_preset: preset needs a tracking instance");
  if (preset == Preset::MILP && tracking)
    throw std::invalid_argument("build_preset: MILP needs a scheduling instance");

  RelaxationModel m;
  m.params = params;
  m.num_periods = T;
  const auto [pde, pce] = effective_rates(params);

  const bool exact = preset == Preset::MILP || preset == Preset::MIQP;
  if (exact) {
    m.has_u = true;
    m.u_integral = true;
    m.soc_chain = true;
    m.u_link = true;
    m.ch_hi.assign(T, params.p_ch_max);
    m.dis_hi.assign(T, params.p_dis_max);
  } else {
    m.ch_hi.assign(T, pce);
    m.dis_hi.assign(T, pde);
    switch (preset) {
      case Preset::HCHLP:
        m.cuts = gen_pozo_cuts(params);
        break;
      case Preset::TLP:
      case Preset::TLPSOC:
        m.cuts = redundancy_filter(gen_window_cuts(params), params);
        break;
      case Preset::TLPu: {
        m.cuts = redundancy_filter(gen_window_cuts(params), params);
        auto ucuts = gen_u_cuts(params);
        m.cuts.insert(m.cuts.end(), ucuts.begin(), ucuts.end());
        m.has_u = true;
        m.u_link = true;
        break;
      }
      default:
        break;
    }
  }

  if (tracking) {
    m.setpoints = instance.values;
    m.objective = preset == Preset::TLPSOC ? ObjectiveKind::TrackingCylinderQP
                                           : ObjectiveKind::TrackingQP;
  } else {
    m.prices = instance.values;
    m.objective = ObjectiveKind::Linear;
    m.maximize = true;
  }
  return m;
}

}  // namespace storcuts
