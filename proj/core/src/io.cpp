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

#include "storcuts/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace storcuts {

namespace {

BatteryParams battery_from_parsed(const nlohmann::json& j) {
  BatteryParams p;
  auto get = [&j](const char* key) -> double {
    if (!j.contains(key))
      throw std::runtime_error(std::string("battery file: missing key '") +
                               key + "'");
    return j.at(key).get<double>();
  };
  p.p_dis_max = get("p_dis_max");
  p.p_ch_max = get("p_ch_max");
  p.soc_min = get("soc_min");
  p.soc_max = get("soc_max");
  p.eta_c = get("eta_c");
  p.eta_d = get("eta_d");
  p.delta = get("delta");
  p.soc_init = get("soc_init");
  if (!j.contains("horizon"))
    throw std::runtime_error("battery file: missing key 'horizon'");
  p.horizon = j.at("horizon").get<int>();
  p.validate();
  return p;
}

}  // namespace

BatteryParams battery_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(std::string("battery file: ") + e.what());
  }
  return battery_from_parsed(j);
}

std::string battery_to_json(const BatteryParams& p) {
  nlohmann::json j;
  j["p_dis_max"] = p.p_dis_max;
  j["p_ch_max"] = p.p_ch_max;
  j["soc_min"] = p.soc_min;
  j["soc_max"] = p.soc_max;
  j["eta_c"] = p.eta_c;
  j["eta_d"] = p.eta_d;
  j["delta"] = p.delta;
  j["soc_init"] = p.soc_init;
  j["horizon"] = p.horizon;
  return j.dump();
}

BatteryParams load_battery(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open battery file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return battery_from_json(ss.str());
}

std::vector<BatteryParams> load_battery_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open battery file: " + path);
  std::vector<BatteryParams> out;
  std::string line;
  std::string acc;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    // JSON-lines if each line parses on its own, otherwise one whole object.
    try {
      out.push_back(battery_from_json(line));
    } catch (const std::runtime_error&) {
      acc += line;
      acc += '\n';
    }
  }
  if (out.empty()) {
    if (acc.empty())
      throw std::runtime_error("battery file is empty: " + path);
    out.push_back(battery_from_json(acc));
  } else if (!acc.empty()) {
    throw std::runtime_error("battery file mixes JSON-lines and multi-line JSON: " +
                             path);
  }
  return out;
}

}  // namespace storcuts
