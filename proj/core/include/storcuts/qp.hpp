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

#ifndef STORCUTS_QP_HPP
#define STORCUTS_QP_HPP

#include <vector>

#include "storcuts/lp.hpp"

namespace storcuts::qp {

/// minimize 0.5 x^T H x + g^T x + obj_offset over lp-style rows and bounds.
/// H must be symmetric positive semidefinite (it may be singular).
struct Problem {
  int num_vars = 0;
  std::vector<double> hessian;  // n*n row-major, symmetric PSD
  std::vector<double> linear;   // g
  double obj_offset = 0.0;
  std::vector<double> lo, hi;   // bounds; lo finite, hi may be +inf
  std::vector<lp::Row> rows;

  double& h(int i, int j) {
    return hessian[static_cast<std::size_t>(i) * num_vars + j];
  }
  double h(int i, int j) const {
    return hessian[static_cast<std::size_t>(i) * num_vars + j];
  }
};

enum class Status { Optimal, Infeasible, IterLimit };

struct Result {
  Status status = Status::IterLimit;
  double objective = 0.0;
  std::vector<double> x;
  int iterations = 0;
  double stationarity_residual = 0.0;  // KKT stationarity, infinity norm
  double max_residual = 0.0;           // primal feasibility
};

/// Primal active-set method with a nullspace step. Zero-curvature descent
/// directions (singular reduced Hessian) ride to the nearest blocking
/// constraint. Ties in the drop rule go to the lowest constraint index.
Result solve(const Problem& prob);

}  // namespace storcuts::qp

#endif  // STORCUTS_QP_HPP
