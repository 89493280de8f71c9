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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "storcuts/io.hpp"
#include "storcuts/runner.hpp"
#include "storcuts/series.hpp"
#include "testutil.hpp"

using namespace storcuts;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = std::string("bench_test_") + name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("series parsing") {
  SUBCASE("well formed") {
    const auto v = parse_series("t,value\n1,1.5\n2,-2\n3,0\n", "mem");
    CHECK(v == std::vector<double>{1.5, -2.0, 0.0});
  }
  SUBCASE("negative values accepted") {
    const auto v = parse_series("t,value\n1,-42.5\n", "mem");
    CHECK(v[0] == doctest::Approx(-42.5));
  }
  SUBCASE("gap detected") {
    std::string text = "t,value\n";
    for (int t = 1; t <= 24; ++t)
      if (t != 13) text += std::to_string(t) + ",1\n";
    CHECK_THROWS_WITH_AS(parse_series(text, "mem"),
                         doctest::Contains("gap at period 13"),
                         std::runtime_error);
  }
  SUBCASE("malformed row") {
    CHECK_THROWS_WITH_AS(parse_series("t,value\n1,abc\n", "mem"),
                         doctest::Contains("malformed row"),
                         std::runtime_error);
    CHECK_THROWS_AS(parse_series("wrong,header\n1,1\n", "mem"),
                    std::runtime_error);
    CHECK_THROWS_AS(parse_series("t,value\n", "mem"), std::runtime_error);
  }
  SUBCASE("round trip") {
    const std::vector<double> v{1.25, -3.5, 0.0, 99.0};
    CHECK(parse_series(series_to_csv(v), "mem") == v);
  }
}

TEST_CASE("24 period file loads with matching length") {
  const auto v =
      load_series(std::string(STORCUTS_REPO_DIR) + "/data/synthetic/prices/day01.csv");
  CHECK(v.size() == 24);
}

TEST_CASE("config parsing and validation") {
  const std::string good = R"({
    "battery_files": ["b.jsonl"],
    "instance_files": ["p.csv"],
    "problem": "scheduling",
    "presets": ["MILP", "TLP"],
    "threshold": 1e-4,
    "output": "r.csv",
    "parallelism": 2
  })";
  const std::string path = write_temp("cfg.json", good);
  const auto cfg = ExperimentConfig::from_json_file(path);
  CHECK(cfg.presets.size() == 2);
  CHECK(cfg.problem == ProblemInstance::Kind::Scheduling);
  CHECK_FALSE(cfg.report_timing);

  const std::string bad_preset = write_temp(
      "cfg_bad.json",
      R"({"battery_files": ["b"], "instance_files": ["p"],
          "problem": "scheduling", "presets": ["TLPSOC"]})");
  CHECK_THROWS_AS(ExperimentConfig::from_json_file(bad_preset),
                  std::runtime_error);
  std::remove(path.c_str());
  std::remove(bad_preset.c_str());
}

TEST_CASE("benchmark sweep aggregates and is deterministic") {
  // Tiny short-horizon sweep so the exact preset stays cheap.
  const BatteryParams small = [] {
    BatteryParams p = testutil::b1(2.0, 6);
    p.eta_c = 0.92;
    p.eta_d = 0.9;
    return p;
  }();
  const std::string bat =
      write_temp("bat.jsonl", battery_to_json(small) + "\n");
  const std::string s1 = write_temp(
      "p1.csv", "t,value\n1,-30\n2,55\n3,-10\n4,70\n5,-45\n6,20\n");
  const std::string s2 = write_temp(
      "p2.csv", "t,value\n1,12\n2,-80\n3,25\n4,25\n5,60\n6,-5\n");

  ExperimentConfig cfg;
  cfg.battery_files = {bat};
  cfg.instance_files = {s1, s2};
  cfg.problem = ProblemInstance::Kind::Scheduling;
  cfg.presets = {Preset::MILP, Preset::HCHLP, Preset::TLP, Preset::TLPu};
  cfg.parallelism = 2;

  const BenchResult a = run_benchmark(cfg);
  const BenchResult b = run_benchmark(cfg);
  REQUIRE(a.rows.size() == 4);
  CHECK(a.total_failures == 0);
  CHECK(a.rows[0].formulation == "MILP");
  CHECK(a.rows[0].pct_hours_violated == 0.0);  // exact formulation
  CHECK(a.rows[0].instances == 2);
  // Objective sandwich in aggregate: relaxed revenue bounds exact revenue.
  CHECK(a.rows[1].mean_obj >= a.rows[0].mean_obj - 1e-9);
  CHECK(emit_report(a.rows, "csv") == emit_report(b.rows, "csv"));

  std::remove(bat.c_str());
  std::remove(s1.c_str());
  std::remove(s2.c_str());
}

TEST_CASE("solver failures land in the failure column") {
  // Horizon mismatch between battery and series.
  const std::string bat =
      write_temp("bat24.jsonl", battery_to_json(testutil::b1(2.0, 24)) + "\n");
  const std::string ser = write_temp("p3.csv", "t,value\n1,1\n2,2\n");
  ExperimentConfig cfg;
  cfg.battery_files = {bat};
  cfg.instance_files = {ser};
  cfg.presets = {Preset::TLP};
  const BenchResult res = run_benchmark(cfg);
  CHECK(res.total_failures == 1);
  CHECK(res.rows[0].failures == 1);
  CHECK(res.rows[0].instances == 0);
  std::remove(bat.c_str());
  std::remove(ser.c_str());
}

TEST_CASE("report emission") {
  std::vector<BenchRow> rows(3);
  rows[0] = {"MILP", 0.0, 0.0, 100.0, 0.0, 10, 0};
  rows[1] = {"HCH-LP", 2.708333, 24.98, 99.0, 52.72, 10, 0};
  rows[2] = {"TLP", 1.73, 11.67, 99.5, 28.81, 10, 0};
  const std::string csv = emit_report(rows, "csv");
  CHECK(csv.rfind(
            "formulation,pct_hours_violated,mean_comp_product,delta_time_pct",
            0) == 0);
  const auto parsed = parse_report_csv(csv);
  REQUIRE(parsed.size() == 3);
  CHECK(parsed[1].formulation == "HCH-LP");
  CHECK(parsed[1].pct_hours_violated == doctest::Approx(2.708333));
  CHECK(parsed[2].delta_time_pct == doctest::Approx(28.81));
  // Parse-emit-parse identity.
  CHECK(emit_report(parsed, "csv") == csv);

  const std::string md = emit_report(rows, "markdown");
  CHECK(md.find("| HCH-LP | 2.708333 | 24.980000 | 52.720000 |") !=
        std::string::npos);

  CHECK_THROWS_AS(emit_report({}, "csv"), std::invalid_argument);
}
