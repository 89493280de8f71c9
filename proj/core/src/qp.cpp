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

#include "storcuts/qp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace storcuts::qp {

namespace {

constexpr double kActiveTol = 1e-9;
constexpr double kMultTol = 1e-9;
constexpr double kStepTol = 1e-11;

// All constraints normalized to a^T x <= b (two per equality) with unit
// gradient norm. Equalities are pinned in the working set from the start.
struct Constraint {
  Eigen::VectorXd a;
  double b = 0.0;
  bool equality = false;
};

std::vector<Constraint> build_constraints(const Problem& prob) {
  const int n = prob.num_vars;
  std::vector<Constraint> cons;
  auto push = [&](Eigen::VectorXd a, double b, bool eq) {
    const double norm = a.norm();
    if (norm <= 1e-14) return;
    cons.push_back({a / norm, b / norm, eq});
  };
  for (const lp::Row& r : prob.rows) {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
    for (auto [j, c] : r.coeffs) a[j] += c;
    switch (r.sense) {
      case lp::RowSense::LE: push(a, r.rhs, false); break;
      case lp::RowSense::GE: push(-a, -r.rhs, false); break;
      case lp::RowSense::EQ: push(a, r.rhs, true); break;
    }
  }
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
    a[j] = 1.0;
    if (prob.hi[j] != lp::kInf) push(a, prob.hi[j], false);
    a[j] = -1.0;
    push(a, -prob.lo[j], false);
  }
  return cons;
}

}  // namespace

Result solve(const Problem& prob) {
  const int n = prob.num_vars;
  Result out;

  // Feasible start from the simplex phase 1.
  lp::Problem feas;
  feas.num_vars = n;
  feas.lo = prob.lo;
  feas.hi = prob.hi;
  feas.rows = prob.rows;
  feas.objective.assign(n, 0.0);
  const lp::Result start = lp::solve(feas);
  if (start.status == lp::Status::Infeasible) {
    out.status = Status::Infeasible;
    return out;
  }
  if (start.status != lp::Status::Optimal) {
    out.status = Status::IterLimit;
    return out;
  }

  Eigen::Map<const Eigen::MatrixXd> H(prob.hessian.data(), n, n);
  Eigen::Map<const Eigen::VectorXd> g(prob.linear.data(), n);
  Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(start.x.data(), n);

  const std::vector<Constraint> cons = build_constraints(prob);
  const int mc = static_cast<int>(cons.size());

  // Initial working set: equalities plus active inequalities while the
  // gradients stay independent.
  std::vector<int> work;
  std::vector<char> in_work(mc, 0);
  Eigen::MatrixXd Aw(n, 0);
  auto rank_of = [&](const Eigen::MatrixXd& M) {
    if (M.cols() == 0) return 0L;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(M);
    qr.setThreshold(1e-10);
    return static_cast<long>(qr.rank());
  };
  auto try_add = [&](int idx) {
    Eigen::MatrixXd cand(n, Aw.cols() + 1);
    if (Aw.cols() > 0) cand.leftCols(Aw.cols()) = Aw;
    cand.col(Aw.cols()) = cons[idx].a;
    if (rank_of(cand) == cand.cols()) {
      Aw = std::move(cand);
      work.push_back(idx);
      in_work[idx] = 1;
      return true;
    }
    return false;
  };
  for (int i = 0; i < mc; ++i)
    if (cons[i].equality) try_add(i);
  for (int i = 0; i < mc; ++i) {
    if (cons[i].equality || in_work[i]) continue;
    if (static_cast<int>(work.size()) >= n) break;
    if (std::fabs(cons[i].a.dot(x) - cons[i].b) <= kActiveTol) try_add(i);
  }

  const int max_iters = 50 * (mc + n) + 100;
  int iter = 0;
  while (iter++ < max_iters) {
    // Nullspace of the working-set gradients.
    Eigen::MatrixXd Z;
    const int r = static_cast<int>(work.size());
    if (r == 0) {
      Z = Eigen::MatrixXd::Identity(n, n);
    } else {
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(Aw);
      Eigen::MatrixXd Q = qr.householderQ();
      Z = Q.rightCols(n - r);
    }

    Eigen::VectorXd grad = H * x + g;
    Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
    bool ray = false;

    if (Z.cols() > 0) {
      const Eigen::MatrixXd Hred = Z.transpose() * H * Z;
      const Eigen::VectorXd gred = Z.transpose() * grad;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Hred);
      const Eigen::VectorXd& ev = es.eigenvalues();
      const Eigen::MatrixXd& V = es.eigenvectors();
      const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
      const double cut = 1e-11 * scale;

      // Descent along zero-curvature directions first.
      Eigen::VectorXd dnull = Eigen::VectorXd::Zero(Z.cols());
      for (int k = 0; k < ev.size(); ++k)
        if (ev[k] <= cut) dnull -= V.col(k) * (V.col(k).dot(gred));
      if (dnull.norm() > 1e-9 * (1.0 + grad.norm())) {
        p = Z * dnull;
        ray = true;
      } else {
        Eigen::VectorXd y = Eigen::VectorXd::Zero(Z.cols());
        for (int k = 0; k < ev.size(); ++k)
          if (ev[k] > cut) y -= V.col(k) * (V.col(k).dot(gred) / ev[k]);
        p = Z * y;
      }
    }

    const double pnorm = p.norm();
    if (!ray && pnorm <= kStepTol * (1.0 + x.norm())) {
      // Stationary on the working set: check multipliers. With rows in
      // a^T x <= b form, KKT needs grad = -Aw*mu with mu >= 0 on the
      // inequalities.
      if (work.empty()) break;
      Eigen::VectorXd mu = Aw.colPivHouseholderQr().solve(-grad);
      int drop = -1;
      double most_neg = -kMultTol * (1.0 + grad.norm());
      for (int k = 0; k < static_cast<int>(work.size()); ++k) {
        if (cons[work[k]].equality) continue;
        if (mu[k] < most_neg - 1e-15 ||
            (drop >= 0 && mu[k] <= most_neg + 1e-15 &&
             work[k] < work[drop])) {
          most_neg = mu[k];
          drop = k;
        }
      }
      if (drop < 0) break;  // KKT satisfied
      in_work[work[drop]] = 0;
      work.erase(work.begin() + drop);
      Eigen::MatrixXd Anew(n, work.size());
      for (std::size_t k = 0; k < work.size(); ++k)
        Anew.col(k) = cons[work[k]].a;
      Aw = std::move(Anew);
      continue;
    }

    // Ratio test against constraints outside the working set.
    double alpha = ray ? lp::kInf : 1.0;
    int block = -1;
    for (int i = 0; i < mc; ++i) {
      if (in_work[i]) continue;
      const double ap = cons[i].a.dot(p);
      if (ap <= 1e-12) continue;
      const double slack = cons[i].b - cons[i].a.dot(x);
      const double t = std::max(slack, 0.0) / ap;
      if (t < alpha - 1e-15) {
        alpha = t;
        block = i;
      }
    }
    if (ray && block < 0) {
      // Unbounded ray; cannot happen on bounded feasible sets.
      out.status = Status::IterLimit;
      out.iterations = iter;
      return out;
    }
    if (alpha > 0.0) x += alpha * p;
    if (block >= 0) try_add(block);
  }

  out.iterations = iter;
  out.x.assign(x.data(), x.data() + n);
  out.objective = 0.5 * x.dot(H * x) + g.dot(x) + prob.obj_offset;

  // KKT certificate from the final working set: grad + Aw*mu = 0 with
  // nonnegative multipliers on the inequalities.
  {
    Eigen::VectorXd grad = H * x + g;
    if (work.empty()) {
      out.stationarity_residual = grad.lpNorm<Eigen::Infinity>();
    } else {
      Eigen::VectorXd mu = Aw.colPivHouseholderQr().solve(-grad);
      for (std::size_t k = 0; k < work.size(); ++k)
        if (!cons[work[k]].equality && mu[k] < 0.0) mu[k] = 0.0;
      out.stationarity_residual =
          (grad + Aw * mu).lpNorm<Eigen::Infinity>();
    }
  }

  // Primal feasibility against the original rows and bounds.
  lp::Problem shell;
  shell.num_vars = n;
  shell.lo = prob.lo;
  shell.hi = prob.hi;
  shell.rows = prob.rows;
  out.max_residual = lp::primal_residual(shell, out.x);

  const bool ok = out.max_residual <= 1e-7 &&
                  out.stationarity_residual <=
                      1e-6 * (1.0 + std::fabs(out.objective)) &&
                  iter < max_iters;
  out.status = ok ? Status::Optimal : Status::IterLimit;
  return out;
}

}  // namespace storcuts::qp
