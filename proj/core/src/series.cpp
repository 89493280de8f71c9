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

#include "storcuts/series.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace storcuts {

std::vector<double> parse_series(const std::string& text,
                                 const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error(origin + ": empty file");
  // Header must be t,value (tolerating trailing whitespace/CR).
  while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
    line.pop_back();
  if (line != "t,value")
    throw std::runtime_error(origin + ": expected header 't,value', got '" +
                             line + "'");
  std::vector<double> values;
  int expected = 1;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    if (line.empty()) continue;
    int t;
    double v;
    char extra;
    if (std::sscanf(line.c_str(), "%d,%lf%c", &t, &v, &extra) != 2)
      throw std::runtime_error(origin + ": malformed row at line " +
                               std::to_string(lineno) + ": '" + line + "'");
    if (t != expected) {
      if (t > expected)
        throw std::runtime_error(origin + ": gap at period " +
                                 std::to_string(expected));
      throw std::runtime_error(origin + ": period " + std::to_string(t) +
                               " out of order at line " +
                               std::to_string(lineno));
    }
    values.push_back(v);
    ++expected;
  }
  if (values.empty()) throw std::runtime_error(origin + ": no data rows");
  return values;
}

std::vector<double> load_series(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open series file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_series(ss.str(), path);
}

std::string series_to_csv(const std::vector<double>& values) {
  std::string out = "t,value\n";
  char buf[64];
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", i + 1, values[i]);
    out += buf;
  }
  return out;
}

}  // namespace storcuts
