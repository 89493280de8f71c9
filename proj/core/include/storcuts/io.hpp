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

#ifndef STORCUTS_IO_HPP
#define STORCUTS_IO_HPP

#include <string>
#include <vector>

#include "storcuts/battery.hpp"

namespace storcuts {

/// Parses a battery parameter JSON object with the exact keys
/// p_dis_max, p_ch_max, soc_min, soc_max, eta_c, eta_d, delta, soc_init,
/// horizon. Throws std::runtime_error on missing keys or malformed input.
BatteryParams battery_from_json(const std::string& text);

std::string battery_to_json(const BatteryParams& params);

/// Loads a single battery from a .json file.
BatteryParams load_battery(const std::string& path);

/// Loads a battery sweep: either one JSON object, or JSON-lines with one
/// battery object per line.
std::vector<BatteryParams> load_battery_file(const std::string& path);

}  // namespace storcuts

#endif  // STORCUTS_IO_HPP
