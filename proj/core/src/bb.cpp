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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "storcuts/model.hpp"

namespace storcuts {

namespace {

double min_form(const RelaxationModel& model, double obj) {
  return model.maximize ? -obj : obj;
}

struct Node {
  double bound = 0.0;  // minimization form
  long seq = 0;
  std::vector<double> u_lo, u_hi;
  SolveReport relax;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;  // min-heap on bound
    return a.seq > b.seq;
  }
};

int most_fractional(const std::vector<double>& u, double int_tol) {
  int pick = -1;
  double best = int_tol;
  for (std::size_t t = 0; t < u.size(); ++t) {
    const double f = std::min(u[t], 1.0 - u[t]);
    if (f > best + 1e-15) {
      best = f;
      pick = static_cast<int>(t);
    }
  }
  return pick;
}

}  // namespace

SolveReport solve_exhaustive(const RelaxationModel& model) {
  if (!model.has_u)
    throw std::invalid_argument("solve_exhaustive: model has no mode variables");
  const int T = model.num_periods;
  if (T > 30) throw std::invalid_argument("solve_exhaustive: horizon too large");
  const auto start = std::chrono::steady_clock::now();
  SolveReport best;
  best.status = SolveStatus::Infeasible;
  double best_val = lp::kInf;
  for (std::uint32_t pattern = 0; pattern < (1u << T); ++pattern) {
    std::vector<double> fix(T);
    for (int t = 0; t < T; ++t) fix[t] = (pattern >> t) & 1u ? 1.0 : 0.0;
    SolveReport rep = solve_relaxation(model, fix, fix);
    if (rep.status != SolveStatus::Optimal) continue;
    const double val = min_form(model, rep.objective);
    if (val < best_val - 1e-12) {
      best_val = val;
      best = std::move(rep);
    }
  }
  best.nodes = 1L << T;
  best.gap = 0.0;
  best.wall_time_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return best;
}

SolveReport solve_bb(const RelaxationModel& model, const BBOptions& opts) {
  if (!model.has_u)
    throw std::invalid_argument("solve_bb: model has no mode variables");
  const auto start = std::chrono::steady_clock::now();
  const int T = model.num_periods;

  std::priority_queue<Node, std::vector<Node>, NodeOrder> queue;
  long seq = 0;
  long nodes = 0;

  SolveReport incumbent;
  incumbent.status = SolveStatus::Infeasible;
  double incumbent_val = lp::kInf;

  auto offer = [&](Node&& node) {
    if (node.relax.status != SolveStatus::Optimal) return;  // pruned
    node.bound = min_form(model, node.relax.objective);
    if (node.bound >= incumbent_val - opts.abs_gap) return;
    const std::vector<double>& u = *node.relax.trajectory.mode;
    if (most_fractional(u, opts.int_tol) < 0) {
      // Integral relaxation optimum: feasible for the exact problem.
      if (node.bound < incumbent_val) {
        incumbent_val = node.bound;
        incumbent = node.relax;
        incumbent.status = SolveStatus::Optimal;
      }
      return;
    }
    queue.push(std::move(node));
  };

  {
    Node root;
    root.seq = seq++;
    root.u_lo.assign(T, 0.0);
    root.u_hi.assign(T, 1.0);
    root.relax = solve_relaxation(model, root.u_lo, root.u_hi);
    ++nodes;
    if (root.relax.status == SolveStatus::Infeasible) {
      SolveReport rep;
      rep.status = SolveStatus::Infeasible;
      rep.nodes = nodes;
      return rep;
    }
    if (root.relax.status == SolveStatus::Unbounded ||
        root.relax.status == SolveStatus::IterLimit) {
      SolveReport rep;
      rep.status = root.relax.status;
      rep.nodes = nodes;
      return rep;
    }
    offer(std::move(root));
  }

  const long fallback_at = (T <= 12) ? 4L * (1L << T) : -1;

  while (!queue.empty()) {
    if (fallback_at > 0 && nodes > fallback_at) {
      SolveReport rep = solve_exhaustive(model);
      rep.nodes += nodes;
      rep.wall_time_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
      return rep;
    }
    if (nodes > opts.node_budget) {
      incumbent.status = incumbent_val < lp::kInf ? SolveStatus::IterLimit
                                                  : SolveStatus::Infeasible;
      incumbent.nodes = nodes;
      incumbent.gap = incumbent_val < lp::kInf
                          ? incumbent_val - queue.top().bound
                          : lp::kInf;
      incumbent.wall_time_ms = std::chrono::duration<double, std::milli>(
                                   std::chrono::steady_clock::now() - start)
                                   .count();
      return incumbent;
    }

    Node node = queue.top();
    queue.pop();
    if (node.bound >= incumbent_val - opts.abs_gap) break;

    const std::vector<double>& u = *node.relax.trajectory.mode;
    const int branch = most_fractional(u, opts.int_tol);
    if (branch < 0) continue;

    for (int side = 0; side < 2; ++side) {
      Node child;
      child.seq = seq++;
      child.u_lo = node.u_lo;
      child.u_hi = node.u_hi;
      if (side == 0)
        child.u_hi[branch] = 0.0;
      else
        child.u_lo[branch] = 1.0;
      child.relax = solve_relaxation(model, child.u_lo, child.u_hi);
      ++nodes;
      offer(std::move(child));
    }
  }

  incumbent.nodes = nodes;
  incumbent.gap = 0.0;
  if (incumbent.status == SolveStatus::Optimal && !queue.empty())
    incumbent.gap =
        std::max(0.0, incumbent_val - queue.top().bound);
  incumbent.wall_time_ms = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - start)
                               .count();
  return incumbent;
}

}  // namespace storcuts
