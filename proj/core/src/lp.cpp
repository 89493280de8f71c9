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

#include "storcuts/lp.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace storcuts::lp {

namespace {

constexpr double kCostTol = 1e-9;
constexpr double kPivotTol = 1e-9;

enum class VarStatus { Basic, AtLower, AtUpper };

// Working tableau over shifted variables (lower bounds at 0). Columns are
// structurals, then one slack per inequality row, then artificials.
// Nonbasic values live in `nbval`; basic values in `beta`, one per row.
struct Tableau {
  int m = 0;         // rows
  int n = 0;         // total columns
  int n_struct = 0;  // structural columns
  std::vector<double> a;     // m*n, row-major: current B^-1 A
  std::vector<double> beta;  // values of basic variables, per row
  std::vector<double> zrow;  // reduced costs, per column
  std::vector<double> cost;  // current phase costs, per column
  std::vector<double> ub;    // upper bound per column (shifted, >= 0)
  std::vector<int> basis;    // basic column per row
  std::vector<VarStatus> status;
  std::vector<double> nbval;  // value per column, meaningful when nonbasic

  double& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  double at(int i, int j) const {
    return a[static_cast<std::size_t>(i) * n + j];
  }

  double value(int j, const std::vector<int>& row_of) const {
    return status[j] == VarStatus::Basic ? beta[row_of[j]] : nbval[j];
  }
};

void compute_reduced_costs(Tableau& tb) {
  std::vector<double> cb(tb.m);
  for (int i = 0; i < tb.m; ++i) cb[i] = tb.cost[tb.basis[i]];
  for (int j = 0; j < tb.n; ++j) {
    if (tb.status[j] == VarStatus::Basic) {
      tb.zrow[j] = 0.0;
      continue;
    }
    double z = tb.cost[j];
    for (int i = 0; i < tb.m; ++i) {
      const double cbi = cb[i];
      if (cbi != 0.0) z -= cbi * tb.at(i, j);
    }
    tb.zrow[j] = z;
  }
}

double objective_value(const Tableau& tb) {
  double v = 0.0;
  for (int j = 0; j < tb.n; ++j)
    if (tb.status[j] != VarStatus::Basic && tb.cost[j] != 0.0)
      v += tb.cost[j] * tb.nbval[j];
  for (int i = 0; i < tb.m; ++i) {
    const double c = tb.cost[tb.basis[i]];
    if (c != 0.0) v += c * tb.beta[i];
  }
  return v;
}

void pivot(Tableau& tb, int row, int col) {
  const double piv = tb.at(row, col);
  const double inv = 1.0 / piv;
  double* prow = &tb.a[static_cast<std::size_t>(row) * tb.n];
  for (int j = 0; j < tb.n; ++j) prow[j] *= inv;
  prow[col] = 1.0;
  for (int i = 0; i < tb.m; ++i) {
    if (i == row) continue;
    const double f = tb.at(i, col);
    if (f == 0.0) continue;
    double* irow = &tb.a[static_cast<std::size_t>(i) * tb.n];
    for (int j = 0; j < tb.n; ++j) irow[j] -= f * prow[j];
    irow[col] = 0.0;
  }
  const double zf = tb.zrow[col];
  if (zf != 0.0) {
    for (int j = 0; j < tb.n; ++j) tb.zrow[j] -= zf * prow[j];
    tb.zrow[col] = 0.0;
  }
}

// One simplex phase on the current cost vector. Dantzig pricing with a
// Bland fallback after 3*n non-improving pivots, released once the
// objective moves again.
Status run_simplex(Tableau& tb, int max_iters, int* iter_count) {
  bool bland = false;
  int stall = 0;
  const int stall_limit = 3 * tb.n;
  double last_obj = objective_value(tb);

  while ((*iter_count)++ < max_iters) {
    int enter = -1;
    double best = 0.0;
    for (int j = 0; j < tb.n; ++j) {
      if (tb.status[j] == VarStatus::Basic) continue;
      double score = 0.0;
      if (tb.status[j] == VarStatus::AtLower && tb.zrow[j] < -kCostTol)
        score = -tb.zrow[j];
      else if (tb.status[j] == VarStatus::AtUpper && tb.zrow[j] > kCostTol)
        score = tb.zrow[j];
      else
        continue;
      if (bland) {
        enter = j;
        break;
      }
      if (score > best) {
        best = score;
        enter = j;
      }
    }
    if (enter < 0) return Status::Optimal;

    const double sigma = (tb.status[enter] == VarStatus::AtLower) ? 1.0 : -1.0;

    // Ratio test: entering moves by sigma*t >= 0 along its feasible
    // direction, basics move by -sigma*D_i*t.
    double t_max = tb.ub[enter];  // bound-flip distance
    int leave_row = -1;
    bool leave_to_upper = false;
    double best_piv = 0.0;
    for (int i = 0; i < tb.m; ++i) {
      const double d = sigma * tb.at(i, enter);
      double t;
      bool to_upper;
      if (d > kPivotTol) {
        t = std::max(tb.beta[i], 0.0) / d;
        to_upper = false;
      } else if (d < -kPivotTol) {
        const double cap = tb.ub[tb.basis[i]];
        if (cap == kInf) continue;
        t = std::max(cap - tb.beta[i], 0.0) / (-d);
        to_upper = true;
      } else {
        continue;
      }
      bool take = false;
      if (t < t_max - 1e-12) {
        take = true;
      } else if (t <= t_max + 1e-12 && leave_row >= 0) {
        // Tie: prefer lowest index under Bland, else the larger pivot.
        take = bland ? tb.basis[i] < tb.basis[leave_row]
                     : std::fabs(d) > best_piv;
      } else if (t <= t_max + 1e-12 && leave_row < 0 && t_max != kInf) {
        take = false;  // keep the bound flip
      }
      if (take) {
        t_max = std::min(t_max, std::max(t, 0.0));
        leave_row = i;
        leave_to_upper = to_upper;
        best_piv = std::fabs(d);
      }
    }

    if (t_max == kInf) return Status::Unbounded;

    for (int i = 0; i < tb.m; ++i) {
      const double d = sigma * tb.at(i, enter);
      if (d != 0.0) {
        tb.beta[i] -= d * t_max;
        if (tb.beta[i] < 0.0 && tb.beta[i] > -1e-11) tb.beta[i] = 0.0;
      }
    }

    if (leave_row < 0) {
      // Bound flip, no basis change.
      tb.status[enter] = (tb.status[enter] == VarStatus::AtLower)
                             ? VarStatus::AtUpper
                             : VarStatus::AtLower;
      tb.nbval[enter] =
          (tb.status[enter] == VarStatus::AtUpper) ? tb.ub[enter] : 0.0;
    } else {
      const int leave = tb.basis[leave_row];
      const double enter_val = tb.nbval[enter] + sigma * t_max;
      tb.status[leave] =
          leave_to_upper ? VarStatus::AtUpper : VarStatus::AtLower;
      tb.nbval[leave] = leave_to_upper ? tb.ub[leave] : 0.0;
      tb.basis[leave_row] = enter;
      tb.status[enter] = VarStatus::Basic;
      tb.beta[leave_row] = enter_val;
      pivot(tb, leave_row, enter);
    }

    const double obj = objective_value(tb);
    if (obj < last_obj - 1e-12 * (1.0 + std::fabs(last_obj))) {
      stall = 0;
      bland = false;
    } else if (++stall > stall_limit) {
      bland = true;
    }
    last_obj = obj;
  }
  return Status::IterLimit;
}

}  // namespace

double primal_residual(const Problem& prob, const std::vector<double>& x) {
  double res = 0.0;
  for (int j = 0; j < prob.num_vars; ++j) {
    res = std::max(res, prob.lo[j] - x[j]);
    if (prob.hi[j] != kInf) res = std::max(res, x[j] - prob.hi[j]);
  }
  for (const Row& r : prob.rows) {
    double lhs = 0.0;
    for (auto [j, c] : r.coeffs) lhs += c * x[j];
    switch (r.sense) {
      case RowSense::LE: res = std::max(res, lhs - r.rhs); break;
      case RowSense::GE: res = std::max(res, r.rhs - lhs); break;
      case RowSense::EQ: res = std::max(res, std::fabs(lhs - r.rhs)); break;
    }
  }
  return res;
}

Result solve(const Problem& prob) {
  const int n_struct = prob.num_vars;
  const int m = static_cast<int>(prob.rows.size());
  for (int j = 0; j < n_struct; ++j) {
    if (!std::isfinite(prob.lo[j]))
      throw std::invalid_argument("lp::solve: lower bounds must be finite");
    if (prob.hi[j] < prob.lo[j]) {
      Result r;
      r.status = Status::Infeasible;
      return r;
    }
  }

  // Shift variables so lower bounds sit at zero.
  std::vector<double> b(m);
  for (int i = 0; i < m; ++i) {
    double rhs = prob.rows[i].rhs;
    for (auto [j, c] : prob.rows[i].coeffs) rhs -= c * prob.lo[j];
    b[i] = rhs;
  }

  int n_slack = 0;
  for (const Row& r : prob.rows)
    if (r.sense != RowSense::EQ) ++n_slack;

  Tableau tb;
  tb.m = m;
  tb.n_struct = n_struct;
  std::vector<int> slack_of(m, -1);
  {
    int s = n_struct;
    for (int i = 0; i < m; ++i)
      if (prob.rows[i].sense != RowSense::EQ) slack_of[i] = s++;
  }
  int n_art = 0;
  std::vector<int> art_of(m, -1);
  for (int i = 0; i < m; ++i) {
    const RowSense sense = prob.rows[i].sense;
    bool need_art = true;
    if (sense == RowSense::LE && b[i] >= 0.0) need_art = false;
    if (sense == RowSense::GE && b[i] <= 0.0) need_art = false;
    if (need_art) art_of[i] = n_struct + n_slack + n_art++;
  }

  tb.n = n_struct + n_slack + n_art;
  tb.a.assign(static_cast<std::size_t>(m) * tb.n, 0.0);
  tb.beta.assign(m, 0.0);
  tb.zrow.assign(tb.n, 0.0);
  tb.cost.assign(tb.n, 0.0);
  tb.ub.assign(tb.n, kInf);
  tb.basis.assign(m, -1);
  tb.status.assign(tb.n, VarStatus::AtLower);
  tb.nbval.assign(tb.n, 0.0);

  for (int j = 0; j < n_struct; ++j)
    tb.ub[j] = (prob.hi[j] == kInf) ? kInf : prob.hi[j] - prob.lo[j];

  for (int i = 0; i < m; ++i) {
    const Row& r = prob.rows[i];
    const double sc = (r.sense == RowSense::LE) ? 1.0 : -1.0;
    const double sign = (art_of[i] >= 0 && b[i] < 0.0) ? -1.0 : 1.0;
    for (auto [j, c] : r.coeffs) tb.at(i, j) += sign * c;
    if (slack_of[i] >= 0) tb.at(i, slack_of[i]) = sign * sc;
    if (art_of[i] >= 0) tb.at(i, art_of[i]) = 1.0;
    const double bi = sign * b[i];

    if (art_of[i] >= 0) {
      tb.basis[i] = art_of[i];
      tb.status[art_of[i]] = VarStatus::Basic;
      tb.beta[i] = bi;
    } else {
      // Slack starts basic; normalize its column to +1.
      if (sign * sc < 0.0)
        for (int j = 0; j < tb.n; ++j) tb.at(i, j) = -tb.at(i, j);
      tb.basis[i] = slack_of[i];
      tb.status[slack_of[i]] = VarStatus::Basic;
      tb.beta[i] = std::fabs(bi);
    }
  }

  Result out;
  const int max_iters = 50 * (m + tb.n);
  int iters = 0;

  // Phase 1: minimize the artificial sum.
  if (n_art > 0) {
    for (int i = 0; i < m; ++i)
      if (art_of[i] >= 0) tb.cost[art_of[i]] = 1.0;
    compute_reduced_costs(tb);
    const Status st = run_simplex(tb, max_iters, &iters);
    out.iterations = iters;
    if (st == Status::IterLimit) {
      out.status = Status::IterLimit;
      return out;
    }
    double infeas = 0.0;
    for (int i = 0; i < m; ++i)
      if (tb.basis[i] >= n_struct + n_slack) infeas += std::fabs(tb.beta[i]);
    if (infeas > 1e-7) {
      out.status = Status::Infeasible;
      return out;
    }
    for (int j = n_struct + n_slack; j < tb.n; ++j) tb.ub[j] = 0.0;
    std::fill(tb.cost.begin(), tb.cost.end(), 0.0);
  }

  // Phase 2.
  for (int j = 0; j < n_struct; ++j) tb.cost[j] = prob.objective[j];
  compute_reduced_costs(tb);
  const Status st = run_simplex(tb, max_iters, &iters);
  out.iterations = iters;
  if (st != Status::Optimal) {
    out.status = st;
    return out;
  }

  std::vector<int> row_of(tb.n, -1);
  for (int i = 0; i < m; ++i) row_of[tb.basis[i]] = i;
  out.x.assign(n_struct, 0.0);
  for (int j = 0; j < n_struct; ++j)
    out.x[j] = prob.lo[j] + tb.value(j, row_of);
  out.objective = prob.obj_offset;
  for (int j = 0; j < n_struct; ++j)
    out.objective += prob.objective[j] * out.x[j];
  out.max_residual = primal_residual(prob, out.x);
  out.status = (out.max_residual <= 1e-8) ? Status::Optimal : Status::IterLimit;
  return out;
}

}  // namespace storcuts::lp
