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

#include "storcuts/cuts.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <unordered_set>

#include <Eigen/Dense>

#include "storcuts/submodular.hpp"
#include "storcuts/vertices.hpp"

namespace storcuts {

std::string to_string(CutFamily family) {
  switch (family) {
    case CutFamily::WindowCharge: return "window_charge";
    case CutFamily::WindowDischarge: return "window_discharge";
    case CutFamily::UCharge: return "u_charge";
    case CutFamily::UDischarge: return "u_discharge";
    case CutFamily::AnchorNoSelf: return "anchor_noself";
    case CutFamily::AnchorWithSelf: return "anchor_withself";
    case CutFamily::PozoCharge: return "pozo_charge";
    case CutFamily::PozoDischarge: return "pozo_discharge";
    case CutFamily::SingleperiodBox: return "box";
  }
  return "?";
}

double LinearCut::lhs(const std::vector<double>& p_ch,
                      const std::vector<double>& p_dis,
                      const std::vector<double>& u) const {
  double v = 0.0;
  for (auto [t, c] : coeff_ch) v += c * p_ch[t];
  for (auto [t, c] : coeff_dis) v += c * p_dis[t];
  for (auto [t, c] : coeff_u) v += c * u[t];
  return v;
}

CoefficientTable::CoefficientTable(const BatteryParams& params)
    : T_(params.horizon), params_(params), env_(soc_envelope(params)) {
  params.validate();
  const double cap_rate_c = (params.soc_max - params.soc_min) /
                            (params.delta * params.eta_c);
  const double cap_rate_d =
      (params.soc_max - params.soc_min) * params.eta_d / params.delta;
  c_.resize(T_);
  d_.resize(T_);
  for (int t0 = 0; t0 < T_; ++t0) {
    const int len = T_ - t0;
    c_[t0].resize(len);
    d_[t0].resize(len);
    const double room_c = (params.soc_max - env_.soc_lo[t0]) /
                          (params.delta * params.eta_c);
    const double room_d =
        (env_.soc_hi[t0] - params.soc_min) * params.eta_d / params.delta;
    for (int k = 0; k < len; ++k) {
      c_[t0][k] = std::min(env_.p_ch_eff,
                           std::max(0.0, room_c - k * env_.p_ch_eff));
      d_[t0][k] = std::min(env_.p_dis_eff,
                           std::max(0.0, room_d - k * env_.p_dis_eff));
    }
  }
  const int nbar = std::max(T_ - 1, 0);
  cbar_.resize(nbar);
  dbar_.resize(nbar);
  for (int k = 0; k < nbar; ++k) {
    cbar_[k] = std::min(env_.p_ch_eff,
                        std::max(0.0, cap_rate_c - k * env_.p_ch_eff));
    dbar_[k] = std::min(env_.p_dis_eff,
                        std::max(0.0, cap_rate_d - k * env_.p_dis_eff));
  }
}

double CoefficientTable::sum_c(int t0, int from, int to) const {
  double s = 0.0;
  for (int j = from; j <= to; ++j) s += c_[t0][j];
  return s;
}

double CoefficientTable::sum_d(int t0, int from, int to) const {
  double s = 0.0;
  for (int j = from; j <= to; ++j) s += d_[t0][j];
  return s;
}

double CoefficientTable::sum_cbar(int count) const {
  double s = 0.0;
  for (int j = 0; j < count; ++j) s += cbar_[j];
  return s;
}

double CoefficientTable::sum_dbar(int count) const {
  double s = 0.0;
  for (int j = 0; j < count; ++j) s += dbar_[j];
  return s;
}

double CoefficientTable::rho_c(int t0, int tau, int k) const {
  const double floor_term = -env_.p_dis_eff_t[t0 + tau] /
                            (params_.eta_d * params_.eta_c);
  return std::max(floor_term, sum_c(t0, tau, k) - sum_cbar(k - tau));
}

double CoefficientTable::rho_d(int t0, int tau, int k) const {
  const double floor_term =
      -params_.eta_d * params_.eta_c * env_.p_ch_eff_t[t0 + tau];
  return std::max(floor_term, sum_d(t0, tau, k) - sum_dbar(k - tau));
}

// Zero credit (rho == 0) drops the term: the worst-case gain from using
// that period is nil, so granting the -1/(eta_d*eta_c) allowance of the
// negative branch would let late activity pay for the whole window and the
// cumulative baseline cuts would no longer be implied.
bool CoefficientTable::rhobar_c(int t0, int tau, int k, double* coeff) const {
  const double rho = rho_c(t0, tau, k);
  if (rho < 0.0) {
    *coeff = -1.0 / (params_.eta_d * params_.eta_c);
    return true;
  }
  if (rho == 0.0) return false;
  const double denom = env_.p_dis_eff_t[t0 + tau];
  if (denom <= 0.0) return false;  // variable frozen at zero
  *coeff = rho / denom;
  return true;
}

bool CoefficientTable::rhobar_d(int t0, int tau, int k, double* coeff) const {
  const double rho = rho_d(t0, tau, k);
  if (rho < 0.0) {
    *coeff = -params_.eta_d * params_.eta_c;
    return true;
  }
  if (rho == 0.0) return false;
  const double denom = env_.p_ch_eff_t[t0 + tau];
  if (denom <= 0.0) return false;
  *coeff = rho / denom;
  return true;
}

double CoefficientTable::fbar_singleton(int t0, int tau, int k) const {
  const double credit = env_.p_dis_eff_t[t0 + tau] /
                        (params_.eta_d * params_.eta_c);
  const double head = (tau > 0) ? sum_c(t0, 0, tau - 1) : 0.0;
  return head +
         std::min(sum_c(t0, tau, k) + credit, sum_cbar(k - tau));
}

double CoefficientTable::gbar_singleton(int t0, int tau, int k) const {
  const double credit =
      params_.eta_d * params_.eta_c * env_.p_ch_eff_t[t0 + tau];
  const double head = (tau > 0) ? sum_d(t0, 0, tau - 1) : 0.0;
  return head +
         std::min(sum_d(t0, tau, k) + credit, sum_dbar(k - tau));
}

namespace {

void push_coeff(std::vector<std::pair<int, double>>& dst, int period,
                double coeff) {
  if (coeff != 0.0) dst.push_back({period, coeff});
}

LinearCut make_box_cut(const EffectiveEnvelope& env, int t0) {
  LinearCut cut;
  cut.family = CutFamily::SingleperiodBox;
  cut.t = t0;
  cut.tau_bar = 0;
  cut.coeff_ch.push_back({t0, 1.0 / env.p_ch_eff_t[t0]});
  cut.coeff_dis.push_back({t0, 1.0 / env.p_dis_eff_t[t0]});
  cut.rhs = 1.0;
  return cut;
}

}  // namespace

std::vector<LinearCut> gen_window_cuts(const BatteryParams& params) {
  const CoefficientTable table(params);
  const EffectiveEnvelope& env = table.envelope();
  const int T = params.horizon;
  std::vector<LinearCut> cuts;
  for (int t0 = 0; t0 < T; ++t0) {
    const bool box_ok = env.p_ch_eff_t[t0] > 0.0 && env.p_dis_eff_t[t0] > 0.0;
    if (box_ok) cuts.push_back(make_box_cut(env, t0));
    for (int k = 0; k < T - t0; ++k) {
      if (k == 0 && box_ok) continue;  // both sides reduce to the box cut
      LinearCut ch;
      ch.family = CutFamily::WindowCharge;
      ch.t = t0;
      ch.tau_bar = k;
      ch.rhs = table.sum_c(t0, 0, k);
      for (int tau = 0; tau <= k; ++tau) {
        push_coeff(ch.coeff_ch, t0 + tau, 1.0);
        double coeff;
        if (table.rhobar_c(t0, tau, k, &coeff))
          push_coeff(ch.coeff_dis, t0 + tau, coeff);
      }
      cuts.push_back(std::move(ch));

      LinearCut di;
      di.family = CutFamily::WindowDischarge;
      di.t = t0;
      di.tau_bar = k;
      di.rhs = table.sum_d(t0, 0, k);
      for (int tau = 0; tau <= k; ++tau) {
        push_coeff(di.coeff_dis, t0 + tau, 1.0);
        double coeff;
        if (table.rhobar_d(t0, tau, k, &coeff))
          push_coeff(di.coeff_ch, t0 + tau, coeff);
      }
      cuts.push_back(std::move(di));
    }
  }
  return dedup_cuts(cuts);
}

std::vector<LinearCut> gen_u_cuts(const BatteryParams& params) {
  const CoefficientTable table(params);
  const int T = params.horizon;
  std::vector<LinearCut> cuts;
  for (int t0 = 0; t0 < T; ++t0) {
    for (int k = 0; k < T - t0; ++k) {
      // Charge side: sum p_ch + sum rho_c*(1-u) <= sum c, expanded so the
      // constant part of the credit moves into the rhs.
      LinearCut ch;
      ch.family = CutFamily::UCharge;
      ch.t = t0;
      ch.tau_bar = k;
      double rho_sum = 0.0;
      for (int tau = 0; tau <= k; ++tau) {
        push_coeff(ch.coeff_ch, t0 + tau, 1.0);
        const double rho = table.rho_c(t0, tau, k);
        rho_sum += rho;
        push_coeff(ch.coeff_u, t0 + tau, -rho);
      }
      ch.rhs = table.sum_c(t0, 0, k) - rho_sum;
      cuts.push_back(std::move(ch));

      LinearCut di;
      di.family = CutFamily::UDischarge;
      di.t = t0;
      di.tau_bar = k;
      for (int tau = 0; tau <= k; ++tau) {
        push_coeff(di.coeff_dis, t0 + tau, 1.0);
        push_coeff(di.coeff_u, t0 + tau, table.rho_d(t0, tau, k));
      }
      di.rhs = table.sum_d(t0, 0, k);
      cuts.push_back(std::move(di));
    }
  }
  return dedup_cuts(cuts);
}

std::vector<LinearCut> gen_anchor_cuts(const BatteryParams& params, int t0,
                                       int k, int tau_star) {
  params.validate();
  const int T = params.horizon;
  if (t0 < 0 || k < 1 || t0 + k >= T)
    throw std::invalid_argument("gen_anchor_cuts: window outside horizon");
  if (tau_star < 0 || tau_star > k)
    throw std::invalid_argument("gen_anchor_cuts: tau_star outside window");

  const CoefficientTable table(params);
  const EffectiveEnvelope& env = table.envelope();
  const double eta2 = params.eta_c * params.eta_d;

  WindowSpec win;
  win.start = t0;
  win.length = k + 1;
  win.soc_start = env.soc_lo[t0];
  win.params = params;

  const double rhs = table.fbar_singleton(t0, tau_star, k);
  const std::uint64_t star_bit = 1ull << tau_star;

  // Discharge coefficient from a charge gain: credited at 1/(eta_c*eta_d)
  // for nonnegative gains, penalized against the per-period effective rate
  // for negative ones. Zero gains drop out; frozen periods drop out.
  auto dis_coeff = [&](double gain_val, int tau, double* coeff) {
    if (gain_val > 0.0) {
      *coeff = -1.0 / eta2;
      return true;
    }
    if (gain_val == 0.0) return false;
    const double denom = env.p_dis_eff_t[t0 + tau];
    if (denom <= 0.0) return false;
    *coeff = -gain_val / denom;
    return true;
  };

  std::vector<LinearCut> out;

  LinearCut no_self;
  no_self.family = CutFamily::AnchorNoSelf;
  no_self.t = t0;
  no_self.tau_bar = k;
  no_self.tau_star = tau_star;
  no_self.rhs = rhs;
  for (int tau = 0; tau <= k; ++tau) {
    if (tau == tau_star) continue;
    push_coeff(no_self.coeff_ch, t0 + tau, 1.0);
    const double g = gain(WindowFn::FBar, win, tau, star_bit);
    double coeff;
    if (dis_coeff(g, tau, &coeff)) push_coeff(no_self.coeff_dis, t0 + tau, coeff);
  }
  out.push_back(std::move(no_self));

  LinearCut with_self;
  with_self.family = CutFamily::AnchorWithSelf;
  with_self.t = t0;
  with_self.tau_bar = k;
  with_self.tau_star = tau_star;
  with_self.rhs = rhs;
  const double self_gain = gain(WindowFn::FBar, win, tau_star, 0);
  if (self_gain >= 0.0) {
    const double kappa = env.p_ch_eff_t[t0 + tau_star];
    if (kappa > 0.0)
      push_coeff(with_self.coeff_ch, t0 + tau_star, 1.0 + self_gain / kappa);
    // kappa == 0 freezes the anchor's charge variable; the term drops.
  }
  // Negative self gain makes the anchor coefficient exactly zero.
  for (int tau = 0; tau <= k; ++tau) {
    if (tau == tau_star) continue;
    push_coeff(with_self.coeff_ch, t0 + tau, 1.0);
    const double g = gain(WindowFn::FBar, win, tau, 0);
    double coeff;
    if (dis_coeff(g, tau, &coeff))
      push_coeff(with_self.coeff_dis, t0 + tau, coeff);
  }
  out.push_back(std::move(with_self));
  return out;
}

std::vector<LinearCut> gen_pozo_cuts(const BatteryParams& params) {
  params.validate();
  const int T = params.horizon;
  const EffectiveEnvelope env = soc_envelope(params);
  const double eta2 = params.eta_c * params.eta_d;
  std::vector<LinearCut> cuts;
  const double rhs_ch =
      (params.soc_max - params.soc_init) / (params.delta * params.eta_c);
  const double rhs_di =
      (params.soc_init - params.soc_min) * params.eta_d / params.delta;
  for (int k = 0; k < T; ++k) {
    LinearCut ch;
    ch.family = CutFamily::PozoCharge;
    ch.t = 0;
    ch.tau_bar = k;
    for (int tau = 0; tau <= k; ++tau) push_coeff(ch.coeff_ch, tau, 1.0);
    for (int tau = 0; tau < k; ++tau) push_coeff(ch.coeff_dis, tau, -1.0 / eta2);
    ch.rhs = rhs_ch;
    cuts.push_back(std::move(ch));

    LinearCut di;
    di.family = CutFamily::PozoDischarge;
    di.t = 0;
    di.tau_bar = k;
    for (int tau = 0; tau <= k; ++tau) push_coeff(di.coeff_dis, tau, 1.0);
    for (int tau = 0; tau < k; ++tau) push_coeff(di.coeff_ch, tau, -eta2);
    di.rhs = rhs_di;
    cuts.push_back(std::move(di));
  }
  for (int t0 = 0; t0 < T; ++t0)
    if (env.p_ch_eff_t[t0] > 0.0 && env.p_dis_eff_t[t0] > 0.0)
      cuts.push_back(make_box_cut(env, t0));
  return dedup_cuts(cuts);
}

namespace {

// Largest window length (minus one) whose per-period coefficients all sit
// at the full effective rate, given E = periods needed to fully charge or
// discharge. Those windows reduce to scaled box cuts. The full rate holds
// exactly while tau_bar <= E - 1.
int gamma_periods(double room, double rate) {
  if (rate <= 0.0) return 0;
  const double e = room / rate;
  if (e <= 0.0) return 0;
  return std::max(0, static_cast<int>(std::floor(e + 1e-9)) - 1);
}

}  // namespace

std::vector<LinearCut> redundancy_filter(const std::vector<LinearCut>& cuts,
                                         const BatteryParams& params) {
  const EffectiveEnvelope env = soc_envelope(params);
  const int T = params.horizon;
  std::vector<int> gamma_c(T), gamma_d(T);
  for (int t0 = 0; t0 < T; ++t0) {
    gamma_c[t0] = gamma_periods(
        (params.soc_max - env.soc_lo[t0]) / (params.delta * params.eta_c),
        env.p_ch_eff);
    gamma_d[t0] = gamma_periods(
        (env.soc_hi[t0] - params.soc_min) * params.eta_d / params.delta,
        env.p_dis_eff);
  }
  std::vector<LinearCut> out;
  for (const LinearCut& cut : cuts) {
    bool drop = false;
    if (cut.family == CutFamily::WindowCharge && cut.tau_bar >= 1)
      drop = cut.tau_bar <= std::min(T - 1 - cut.t, gamma_c[cut.t]);
    else if (cut.family == CutFamily::WindowDischarge && cut.tau_bar >= 1)
      drop = cut.tau_bar <= std::min(T - 1 - cut.t, gamma_d[cut.t]);
    if (!drop) out.push_back(cut);
  }
  return out;
}

std::vector<LinearCut> dedup_cuts(const std::vector<LinearCut>& cuts) {
  std::unordered_set<std::string> seen;
  std::vector<LinearCut> out;
  char buf[64];
  for (const LinearCut& cut : cuts) {
    const double scale = cut.rhs > 1e-12 ? 1.0 / cut.rhs : 1.0;
    std::string key;
    auto add = [&](char kind, const std::vector<std::pair<int, double>>& m) {
      for (auto [t, c] : m) {
        std::snprintf(buf, sizeof(buf), "%c%d:%a;", kind, t, c * scale);
        key += buf;
      }
    };
    add('c', cut.coeff_ch);
    add('d', cut.coeff_dis);
    add('u', cut.coeff_u);
    std::snprintf(buf, sizeof(buf), "r%a", cut.rhs * scale);
    key += buf;
    if (seen.insert(key).second) out.push_back(cut);
  }
  return out;
}

ValidityReport validate_cuts(const std::vector<LinearCut>& cuts,
                             const BatteryParams& params) {
  params.validate();
  const int T = params.horizon;
  if (T > 4)
    throw std::invalid_argument("validate_cuts: horizon too large");
  ValidityReport rep;
  rep.max_violation = -1e300;
  for (std::uint32_t pattern = 0; pattern < (1u << T); ++pattern) {
    std::vector<double> u(T, 0.0);
    for (int t = 0; t < T; ++t) u[t] = (pattern >> t) & 1u ? 1.0 : 0.0;
    const auto verts = enumerate_pattern_vertices(params, pattern);
    for (const Trajectory& v : verts) {
      ++rep.points_checked;
      for (std::size_t i = 0; i < cuts.size(); ++i) {
        const double viol = cuts[i].violation(v.p_ch, v.p_dis, u);
        if (viol > rep.max_violation) {
          rep.max_violation = viol;
          rep.worst_cut = static_cast<int>(i);
        }
      }
    }
  }
  if (cuts.empty()) rep.max_violation = 0.0;
  rep.pass = rep.max_violation <= 1e-8;
  return rep;
}

FacetCertificate facet_certificate(const LinearCut& cut,
                                   const BatteryParams& params) {
  params.validate();
  const int T = params.horizon;
  if (T > 4)
    throw std::invalid_argument("facet_certificate: horizon too large");

  FacetCertificate cert;
  // Filtered-out cuts carry no certificate.
  const auto kept = redundancy_filter({cut}, params);
  if (kept.empty()) {
    cert.skipped = true;
    return cert;
  }

  const auto verts = enumerate_vertices(params);
  std::vector<Eigen::VectorXd> tight;
  for (const Trajectory& v : verts) {
    if (std::fabs(cut.violation(v.p_ch, v.p_dis)) <= 1e-8) {
      Eigen::VectorXd point(2 * T);
      for (int t = 0; t < T; ++t) {
        point[t] = v.p_ch[t];
        point[T + t] = v.p_dis[t];
      }
      tight.push_back(std::move(point));
    }
  }
  cert.tight_count = static_cast<int>(tight.size());
  if (tight.size() > 1) {
    Eigen::MatrixXd diffs(tight.size() - 1, 2 * T);
    for (std::size_t i = 1; i < tight.size(); ++i)
      diffs.row(i - 1) = (tight[i] - tight[0]).transpose();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(diffs);
    lu.setThreshold(1e-9);
    cert.affine_rank = static_cast<int>(lu.rank());
  }
  cert.pass = cert.tight_count >= 2 * (cut.tau_bar + 1);
  return cert;
}

std::string cuts_to_csv(const std::vector<LinearCut>& cuts) {
  std::string out = "family,t,tau_bar,tau_star,var_kind,period,coeff,rhs\n";
  char buf[192];
  for (const LinearCut& cut : cuts) {
    auto emit = [&](const char* kind,
                    const std::vector<std::pair<int, double>>& m) {
      for (auto [t, c] : m) {
        std::string star =
            cut.tau_star >= 0 ? std::to_string(cut.tau_star) : "";
        std::snprintf(buf, sizeof(buf), "%s,%d,%d,%s,%s,%d,%.17g,%.17g\n",
                      to_string(cut.family).c_str(), cut.t + 1, cut.tau_bar,
                      star.c_str(), kind, t + 1, c, cut.rhs);
        out += buf;
      }
    };
    emit("ch", cut.coeff_ch);
    emit("dis", cut.coeff_dis);
    emit("u", cut.coeff_u);
  }
  return out;
}

}  // namespace storcuts
