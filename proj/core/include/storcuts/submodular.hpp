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

#ifndef STORCUTS_SUBMODULAR_HPP
#define STORCUTS_SUBMODULAR_HPP

#include <cstdint>

#include "storcuts/battery.hpp"

namespace storcuts {

/// A contiguous window of periods over which the cumulative charge and
/// discharge set functions are evaluated. Periods inside the window are
/// addressed by their relative offset 0..length-1; subsets of them by
/// bitmask (bit k = offset k). At most 64 periods.
struct WindowSpec {
  int start = 0;          // absolute 0-based period of the first offset
  int length = 1;         // number of periods in the window
  double soc_start = 0.0; // stored energy entering the window
  BatteryParams params;   // only rates/capacity/efficiencies/delta are used

  /// Throws std::invalid_argument when the window falls outside the horizon
  /// or soc_start leaves [soc_min, soc_max].
  void validate() const;
};

/// Which set function a gain refers to. `F` maximizes cumulative charge with
/// charging allowed exactly on the subset; `G` maximizes cumulative
/// discharge with discharging allowed exactly off the subset. `FBar`/`GBar`
/// are the complement functions fn(window \ subset).
enum class WindowFn { F, G, FBar, GBar };

/// Cumulative-charge value: charging is allowed exactly on the offsets in
/// `omega`; every other period discharges as much as the state admits.
/// Closed-form greedy over the window, clamped to [soc_min, soc_max].
double eval_f_closed(const WindowSpec& win, std::uint64_t omega);

/// Same value through the window linear program, solved with the dense
/// simplex. Reference oracle for eval_f_closed. Throws on solver failure.
double eval_f_lp(const WindowSpec& win, std::uint64_t omega);

/// Cumulative-discharge mirror: charging allowed exactly on `omega`,
/// discharging everywhere else; returns the maximal total discharge.
double eval_g(const WindowSpec& win, std::uint64_t omega);

/// LP route for eval_g.
double eval_g_lp(const WindowSpec& win, std::uint64_t omega);

double eval_window_fn(WindowFn fn, const WindowSpec& win, std::uint64_t subset);

/// fn(context + element) - fn(context). Throws if the element is already in
/// the context.
double gain(WindowFn fn, const WindowSpec& win, int element,
            std::uint64_t context);

struct CertificateReport {
  bool pass = false;
  // Minimum of fn(j|A) - fn(j|B) over all A subset of B, j outside B,
  // one entry per function.
  double min_margin_f = 0.0;
  double min_margin_g = 0.0;
  double min_margin_fbar = 0.0;
  double min_margin_gbar = 0.0;
  long pairs_checked = 0;
};

/// Exhaustively certifies diminishing gains for f, g and both complements
/// on windows of at most 6 periods (3^length chain cost). Passing margin is
/// >= -1e-9. Throws std::invalid_argument for longer windows.
CertificateReport check_submodularity(const WindowSpec& win);

}  // namespace storcuts

#endif  // STORCUTS_SUBMODULAR_HPP
