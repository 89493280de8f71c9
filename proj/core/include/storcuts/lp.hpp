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

#ifndef STORCUTS_LP_HPP
#define STORCUTS_LP_HPP

#include <limits>
#include <utility>
#include <vector>

namespace storcuts::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class RowSense { LE, GE, EQ };

/// One linear row: sum_j coeff_j * x_j  (<= | >= | =)  rhs.
struct Row {
  std::vector<std::pair<int, double>> coeffs;  // (variable index, coefficient)
  RowSense sense = RowSense::LE;
  double rhs = 0.0;
};

/// minimize objective^T x + obj_offset subject to rows and bounds.
/// Lower bounds must be finite; upper bounds may be +infinity.
struct Problem {
  int num_vars = 0;
  std::vector<double> lo;
  std::vector<double> hi;
  std::vector<Row> rows;
  std::vector<double> objective;
  double obj_offset = 0.0;

  int add_var(double lo_v, double hi_v, double cost = 0.0) {
    lo.push_back(lo_v);
    hi.push_back(hi_v);
    objective.push_back(cost);
    return num_vars++;
  }
};

enum class Status { Optimal, Infeasible, Unbounded, IterLimit };

struct Result {
  Status status = Status::IterLimit;
  double objective = 0.0;  // includes obj_offset
  std::vector<double> x;
  int iterations = 0;
  double max_residual = 0.0;  // worst primal violation over rows and bounds
};

/// Dense two-phase simplex with bounded variables. Dantzig pricing with a
/// Bland's-rule fallback when the objective stalls. Iteration cap
/// 50*(rows+cols).
Result solve(const Problem& prob);

/// Worst violation of rows and bounds at x.
double primal_residual(const Problem& prob, const std::vector<double>& x);

}  // namespace storcuts::lp

#endif  // STORCUTS_LP_HPP
