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

#include "storcuts/vertices.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace storcuts {

namespace {

constexpr double kVertexTol = 1e-9;

struct PatternGeometry {
  int T;
  std::vector<double> cap;    // per-period power bound
  std::vector<double> sigma;  // SoC change per unit power
  double s0;
  double lo, hi;  // SoC bounds relative to nothing (absolute)
};

PatternGeometry geometry(const BatteryParams& p, std::uint32_t pattern) {
  PatternGeometry geo;
  geo.T = p.horizon;
  geo.s0 = p.soc_init;
  geo.lo = p.soc_min;
  geo.hi = p.soc_max;
  geo.cap.resize(geo.T);
  geo.sigma.resize(geo.T);
  for (int t = 0; t < geo.T; ++t) {
    if ((pattern >> t) & 1u) {
      geo.cap[t] = p.p_ch_max;
      geo.sigma[t] = p.delta * p.eta_c;
    } else {
      geo.cap[t] = p.p_dis_max;
      geo.sigma[t] = -p.delta / p.eta_d;
    }
  }
  return geo;
}

bool feasible(const PatternGeometry& geo, const Eigen::VectorXd& y) {
  double s = geo.s0;
  for (int t = 0; t < geo.T; ++t) {
    if (y[t] < -kVertexTol || y[t] > geo.cap[t] + kVertexTol) return false;
    s += geo.sigma[t] * y[t];
    if (s < geo.lo - kVertexTol || s > geo.hi + kVertexTol) return false;
  }
  return true;
}

}  // namespace

std::vector<Trajectory> enumerate_pattern_vertices(const BatteryParams& params,
                                                   std::uint32_t pattern) {
  params.validate();
  const int T = params.horizon;
  if (T > 4)
    throw std::invalid_argument("enumerate_pattern_vertices: horizon too large");

  const PatternGeometry geo = geometry(params, pattern);

  // Constraint rows a^T y = b, 4 per period: y_t = 0, y_t = cap_t,
  // prefix SoC = soc_min, prefix SoC = soc_max.
  const int nc = 4 * T;
  std::vector<Eigen::RowVectorXd> rows(nc, Eigen::RowVectorXd::Zero(T));
  std::vector<double> rhs(nc, 0.0);
  for (int t = 0; t < T; ++t) {
    rows[4 * t](t) = 1.0;
    rhs[4 * t] = 0.0;
    rows[4 * t + 1](t) = 1.0;
    rhs[4 * t + 1] = geo.cap[t];
    for (int j = 0; j <= t; ++j) {
      rows[4 * t + 2](j) = geo.sigma[j];
      rows[4 * t + 3](j) = geo.sigma[j];
    }
    rhs[4 * t + 2] = params.soc_min - params.soc_init;
    rhs[4 * t + 3] = params.soc_max - params.soc_init;
  }

  // Least-squares re-solve against every constraint active at the point.
  // Candidates from ill-conditioned subsets of a degenerate vertex all
  // collapse onto one canonical representative.
  auto polish = [&](const Eigen::VectorXd& y) -> Eigen::VectorXd {
    std::vector<int> act;
    for (int i = 0; i < nc; ++i)
      if (std::fabs(rows[i].dot(y) - rhs[i]) <= 1e-7) act.push_back(i);
    if (static_cast<int>(act.size()) < T) return y;
    Eigen::MatrixXd A(act.size(), T);
    Eigen::VectorXd b(act.size());
    for (std::size_t i = 0; i < act.size(); ++i) {
      A.row(i) = rows[act[i]];
      b[i] = rhs[act[i]];
    }
    return A.colPivHouseholderQr().solve(b);
  };

  std::vector<Eigen::VectorXd> points;
  std::vector<int> pick(T);
  // All T-subsets of the nc constraints.
  auto recurse = [&](auto&& self, int depth, int start) -> void {
    if (depth == T) {
      Eigen::MatrixXd A(T, T);
      Eigen::VectorXd b(T);
      for (int i = 0; i < T; ++i) {
        A.row(i) = rows[pick[i]];
        b[i] = rhs[pick[i]];
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
      lu.setThreshold(1e-10);
      if (lu.rank() < T) return;
      const Eigen::VectorXd y = polish(lu.solve(b));
      if (feasible(geo, y)) points.push_back(y);
      return;
    }
    for (int i = start; i < nc; ++i) {
      pick[depth] = i;
      self(self, depth + 1, i + 1);
    }
  };
  recurse(recurse, 0, 0);

  // Dedup within the pattern (pairwise; the sets are tiny).
  std::sort(points.begin(), points.end(),
            [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
              return std::lexicographical_compare(
                  a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
            });
  std::vector<Eigen::VectorXd> kept;
  for (const Eigen::VectorXd& y : points) {
    bool dup = false;
    for (const Eigen::VectorXd& k : kept) {
      if ((k - y).lpNorm<Eigen::Infinity>() <= kVertexTol) {
        dup = true;
        break;
      }
    }
    if (!dup) kept.push_back(y);
  }
  std::vector<Trajectory> out;
  for (const Eigen::VectorXd& y : kept) {
    std::vector<double> p_ch(T, 0.0), p_dis(T, 0.0), mode(T, 0.0);
    for (int t = 0; t < T; ++t) {
      double v = y[t];
      if (std::fabs(v) < 1e-11) v = 0.0;
      if ((pattern >> t) & 1u) {
        p_ch[t] = v;
        mode[t] = 1.0;
      } else {
        p_dis[t] = v;
      }
    }
    Trajectory traj = simulate_soc(params, p_dis, p_ch);
    traj.mode = mode;
    out.push_back(std::move(traj));
  }
  return out;
}

std::vector<Trajectory> enumerate_vertices(const BatteryParams& params) {
  params.validate();
  const int T = params.horizon;
  if (T > 4)
    throw std::invalid_argument("enumerate_vertices: horizon too large");

  std::vector<Trajectory> all;
  for (std::uint32_t pattern = 0; pattern < (1u << T); ++pattern) {
    auto verts = enumerate_pattern_vertices(params, pattern);
    for (auto& v : verts) all.push_back(std::move(v));
  }
  std::sort(all.begin(), all.end(), [](const Trajectory& a, const Trajectory& b) {
    for (std::size_t i = 0; i < a.p_ch.size(); ++i) {
      if (a.p_ch[i] != b.p_ch[i]) return a.p_ch[i] < b.p_ch[i];
    }
    for (std::size_t i = 0; i < a.p_dis.size(); ++i) {
      if (a.p_dis[i] != b.p_dis[i]) return a.p_dis[i] < b.p_dis[i];
    }
    return false;
  });
  std::vector<Trajectory> out;
  for (auto& v : all) {
    bool dup = false;
    for (const Trajectory& k : out) {
      double diff = 0.0;
      for (std::size_t i = 0; i < v.p_ch.size(); ++i) {
        diff = std::max(diff, std::fabs(v.p_ch[i] - k.p_ch[i]));
        diff = std::max(diff, std::fabs(v.p_dis[i] - k.p_dis[i]));
      }
      if (diff <= kVertexTol) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace storcuts
