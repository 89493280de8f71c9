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

#include "storcuts/submodular.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "storcuts/lp.hpp"

namespace storcuts {

void WindowSpec::validate() const {
  params.validate();
  if (length < 1 || length > 64)
    throw std::invalid_argument("WindowSpec: length outside [1, 64]");
  if (start < 0 || start + length > params.horizon)
    throw std::invalid_argument("WindowSpec: window exceeds the horizon");
  if (soc_start < params.soc_min - 1e-12 || soc_start > params.soc_max + 1e-12)
    throw std::invalid_argument("WindowSpec: soc_start outside capacity bounds");
}

namespace {

std::uint64_t full_mask(int length) {
  return length >= 64 ? ~0ull : ((1ull << length) - 1);
}

}  // namespace

double eval_f_closed(const WindowSpec& win, std::uint64_t omega) {
  const BatteryParams& p = win.params;
  const auto [pde, pce] = effective_rates(p);
  double s = win.soc_start;
  double total = 0.0;
  for (int tau = 0; tau < win.length; ++tau) {
    if (omega & (1ull << tau)) {
      const double amt =
          std::min((p.soc_max - s) / (p.delta * p.eta_c), pce);
      total += std::max(amt, 0.0);
      s = std::min(s + p.delta * p.eta_c * pce, p.soc_max);
    } else {
      s = std::max(s - p.delta * pde / p.eta_d, p.soc_min);
    }
  }
  return total;
}

double eval_g(const WindowSpec& win, std::uint64_t omega) {
  const BatteryParams& p = win.params;
  const auto [pde, pce] = effective_rates(p);
  double s = win.soc_start;
  double total = 0.0;
  for (int tau = 0; tau < win.length; ++tau) {
    if (omega & (1ull << tau)) {
      s = std::min(s + p.delta * p.eta_c * pce, p.soc_max);
    } else {
      const double amt = std::min((s - p.soc_min) * p.eta_d / p.delta, pde);
      total += std::max(amt, 0.0);
      s = std::max(s - p.delta * pde / p.eta_d, p.soc_min);
    }
  }
  return total;
}

namespace {

// Window LP over (p_ch, p_dis, soc) with the charging pattern fixed by the
// subset: charge blocked off omega, discharge blocked on omega.
double eval_window_lp(const WindowSpec& win, std::uint64_t omega,
                      bool maximize_charge) {
  const BatteryParams& p = win.params;
  const auto [pde, pce] = effective_rates(p);
  const int L = win.length;
  lp::Problem prob;
  std::vector<int> vc(L), vd(L), vs(L);
  for (int tau = 0; tau < L; ++tau) {
    const bool charging = (omega >> tau) & 1ull;
    vc[tau] = prob.add_var(0.0, charging ? pce : 0.0,
                           maximize_charge ? -1.0 : 0.0);
    vd[tau] = prob.add_var(0.0, charging ? 0.0 : pde,
                           maximize_charge ? 0.0 : -1.0);
    vs[tau] = prob.add_var(p.soc_min, p.soc_max, 0.0);
  }
  for (int tau = 0; tau < L; ++tau) {
    lp::Row row;
    row.sense = lp::RowSense::EQ;
    row.coeffs.push_back({vs[tau], 1.0});
    row.coeffs.push_back({vc[tau], -p.delta * p.eta_c});
    row.coeffs.push_back({vd[tau], p.delta / p.eta_d});
    if (tau == 0) {
      row.rhs = win.soc_start;
    } else {
      row.coeffs.push_back({vs[tau - 1], -1.0});
      row.rhs = 0.0;
    }
    prob.rows.push_back(std::move(row));
  }
  const lp::Result res = lp::solve(prob);
  if (res.status != lp::Status::Optimal)
    throw std::runtime_error("window LP did not solve to optimality");
  return -res.objective;
}

}  // namespace

double eval_f_lp(const WindowSpec& win, std::uint64_t omega) {
  return eval_window_lp(win, omega, /*maximize_charge=*/true);
}

double eval_g_lp(const WindowSpec& win, std::uint64_t omega) {
  return eval_window_lp(win, omega, /*maximize_charge=*/false);
}

double eval_window_fn(WindowFn fn, const WindowSpec& win,
                      std::uint64_t subset) {
  const std::uint64_t all = full_mask(win.length);
  switch (fn) {
    case WindowFn::F:
      return eval_f_closed(win, subset);
    case WindowFn::G:
      return eval_g(win, subset);
    case WindowFn::FBar:
      return eval_f_closed(win, all & ~subset);
    case WindowFn::GBar:
      return eval_g(win, all & ~subset);
  }
  return 0.0;
}

double gain(WindowFn fn, const WindowSpec& win, int element,
            std::uint64_t context) {
  if (element < 0 || element >= win.length)
    throw std::invalid_argument("gain: element outside the window");
  const std::uint64_t bit = 1ull << element;
  if (context & bit)
    throw std::invalid_argument("gain: element already in the context");
  return eval_window_fn(fn, win, context | bit) -
         eval_window_fn(fn, win, context);
}

CertificateReport check_submodularity(const WindowSpec& win) {
  if (win.length > 6)
    throw std::invalid_argument("check_submodularity: window too large");
  const int L = win.length;
  const std::uint64_t all = full_mask(L);

  // Cache all 2^L values of the four functions.
  const int n_sets = 1 << L;
  std::vector<double> vf(n_sets), vg(n_sets);
  for (int s = 0; s < n_sets; ++s) {
    vf[s] = eval_f_closed(win, static_cast<std::uint64_t>(s));
    vg[s] = eval_g(win, static_cast<std::uint64_t>(s));
  }
  auto value = [&](WindowFn fn, std::uint64_t s) {
    switch (fn) {
      case WindowFn::F: return vf[s];
      case WindowFn::G: return vg[s];
      case WindowFn::FBar: return vf[all & ~s];
      case WindowFn::GBar: return vg[all & ~s];
    }
    return 0.0;
  };

  CertificateReport rep;
  double margins[4] = {1e300, 1e300, 1e300, 1e300};
  const WindowFn fns[4] = {WindowFn::F, WindowFn::G, WindowFn::FBar,
                           WindowFn::GBar};
  // Enumerate A subset of B by iterating B and its subsets.
  for (std::uint64_t b = 0; b <= all; ++b) {
    std::uint64_t a = b;
    while (true) {
      for (int j = 0; j < L; ++j) {
        const std::uint64_t bit = 1ull << j;
        if (b & bit) continue;
        for (int k = 0; k < 4; ++k) {
          const double ga =
              value(fns[k], a | bit) - value(fns[k], a);
          const double gb =
              value(fns[k], b | bit) - value(fns[k], b);
          margins[k] = std::min(margins[k], ga - gb);
        }
        ++rep.pairs_checked;
      }
      if (a == 0) break;
      a = (a - 1) & b;
    }
  }
  rep.min_margin_f = margins[0];
  rep.min_margin_g = margins[1];
  rep.min_margin_fbar = margins[2];
  rep.min_margin_gbar = margins[3];
  rep.pass = std::min(std::min(margins[0], margins[1]),
                      std::min(margins[2], margins[3])) >= -1e-9;
  return rep;
}

}  // namespace storcuts
