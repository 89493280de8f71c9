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

#ifndef STORCUTS_RUNNER_HPP
#define STORCUTS_RUNNER_HPP

#include <string>
#include <vector>

#include "storcuts/battery.hpp"
#include "storcuts/model.hpp"

namespace storcuts {

/// Sweep definition: the cross product of batteries and instance series is
/// solved under every preset.
struct ExperimentConfig {
  std::vector<std::string> battery_files;
  std::vector<std::string> instance_files;
  ProblemInstance::Kind problem = ProblemInstance::Kind::Scheduling;
  std::vector<Preset> presets;
  double threshold = 1e-4;  // kW^2, simultaneous charge/discharge metric
  std::string output;       // report path
  int parallelism = 1;
  // Timing needs repeated solves and is inherently non-deterministic;
  // reports stay byte-reproducible when it is off.
  bool report_timing = false;
  std::string format = "csv";  // csv | markdown

  static ExperimentConfig from_json_file(const std::string& path);
};

/// One aggregate row per preset, Table-style.
struct BenchRow {
  std::string formulation;
  double pct_hours_violated = 0.0;
  double mean_comp_product = 0.0;  // mean over instances of sum_t p_ch*p_dis
  double mean_obj = 0.0;
  double delta_time_pct = 0.0;  // vs the exact preset; NaN when timing is off
  long instances = 0;
  long failures = 0;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  long total_instances = 0;
  long total_failures = 0;
};

/// Runs the full cross product. Per-instance solver failures land in the
/// failure column; the sweep never aborts.
BenchResult run_benchmark(const ExperimentConfig& config);

/// Deterministic column order formulation,pct_hours_violated,
/// mean_comp_product,delta_time_pct. Markdown mirrors the same table.
std::string emit_report(const std::vector<BenchRow>& rows,
                        const std::string& format);

/// Parses a CSV produced by emit_report (round-trip support).
std::vector<BenchRow> parse_report_csv(const std::string& text);

}  // namespace storcuts

#endif  // STORCUTS_RUNNER_HPP
