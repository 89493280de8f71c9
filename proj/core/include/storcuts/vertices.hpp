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

#ifndef STORCUTS_VERTICES_HPP
#define STORCUTS_VERTICES_HPP

#include <cstdint>
#include <vector>

#include "storcuts/battery.hpp"

namespace storcuts {

/// Vertices of the polytope obtained by fixing the charge/discharge pattern
/// (bit t set = period t charges). One free power variable per period; all
/// T-subsets of the box and SoC-bound constraints are solved and the
/// feasible solutions kept. Horizon at most 4.
std::vector<Trajectory> enumerate_pattern_vertices(const BatteryParams& params,
                                                   std::uint32_t pattern);

/// Union of the fixed-pattern vertex sets over all 2^T patterns,
/// deduplicated in the power coordinates to 1e-9. Each trajectory carries a
/// witnessing pattern in `mode`. Horizon at most 4.
std::vector<Trajectory> enumerate_vertices(const BatteryParams& params);

}  // namespace storcuts

#endif  // STORCUTS_VERTICES_HPP
