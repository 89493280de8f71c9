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

#ifndef STORCUTS_SERIES_HPP
#define STORCUTS_SERIES_HPP

#include <string>
#include <vector>

namespace storcuts {

/// Loads a `t,value` CSV: header line, 1-based contiguous integer periods,
/// decimal values (negative allowed). Throws std::runtime_error naming the
/// first malformed row or period gap.
std::vector<double> load_series(const std::string& path);

std::vector<double> parse_series(const std::string& text,
                                 const std::string& origin);

std::string series_to_csv(const std::vector<double>& values);

}  // namespace storcuts

#endif  // STORCUTS_SERIES_HPP
