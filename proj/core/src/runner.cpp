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

#include "storcuts/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "storcuts/io.hpp"
#include "storcuts/series.hpp"

namespace storcuts {

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(std::string("config parse error: ") + e.what());
  }
  ExperimentConfig cfg;
  for (const auto& f : j.at("battery_files"))
    cfg.battery_files.push_back(f.get<std::string>());
  for (const auto& f : j.at("instance_files"))
    cfg.instance_files.push_back(f.get<std::string>());
  const std::string problem = j.value("problem", "scheduling");
  if (problem == "scheduling")
    cfg.problem = ProblemInstance::Kind::Scheduling;
  else if (problem == "tracking")
    cfg.problem = ProblemInstance::Kind::Tracking;
  else
    throw std::runtime_error("config: unknown problem kind '" + problem + "'");
  for (const auto& p : j.at("presets"))
    cfg.presets.push_back(preset_from_string(p.get<std::string>()));
  cfg.threshold = j.value("threshold", 1e-4);
  if (!(cfg.threshold > 0.0))
    throw std::runtime_error("config: threshold must be positive");
  cfg.output = j.value("output", "");
  cfg.parallelism = j.value("parallelism", 1);
  cfg.report_timing = j.value("report_timing", false);
  cfg.format = j.value("format", "csv");
  if (cfg.format != "csv" && cfg.format != "markdown")
    throw std::runtime_error("config: unknown format '" + cfg.format + "'");
  for (Preset p : cfg.presets) {
    const bool tracking = cfg.problem == ProblemInstance::Kind::Tracking;
    if ((p == Preset::MIQP || p == Preset::TLPSOC) && !tracking)
      throw std::runtime_error("config: preset " + to_string(p) +
                               " needs problem=tracking");
    if (p == Preset::MILP && tracking)
      throw std::runtime_error("config: preset MILP needs problem=scheduling");
  }
  return cfg;
}

namespace {

struct CellResult {
  bool ok = false;
  int violated_periods = 0;
  double comp_product = 0.0;
  double objective = 0.0;
  double time_ms = 0.0;
  int periods = 0;
};

CellResult run_cell(const BatteryParams& battery,
                    const std::vector<double>& series,
                    ProblemInstance::Kind kind, Preset preset,
                    double threshold, bool timing) {
  CellResult cell;
  try {
    ProblemInstance inst;
    inst.kind = kind;
    inst.values = series;
    const RelaxationModel model = build_preset(battery, preset, inst);
    SolveReport rep = solve_model(model);
    double time_ms = rep.wall_time_ms;
    if (timing) {
      // Median of three solves.
      double t2 = solve_model(model).wall_time_ms;
      double t3 = solve_model(model).wall_time_ms;
      double a = rep.wall_time_ms, b = t2, c = t3;
      time_ms = std::max(std::min(a, b), std::min(std::max(a, b), c));
    }
    if (rep.status != SolveStatus::Optimal) return cell;
    const auto [count, sum] = violation_metrics(rep.trajectory, threshold);
    cell.ok = true;
    cell.violated_periods = count;
    cell.comp_product = sum;
    cell.objective = rep.objective;
    cell.time_ms = time_ms;
    cell.periods = battery.horizon;
  } catch (const std::exception&) {
    cell.ok = false;
  }
  return cell;
}

}  // namespace

BenchResult run_benchmark(const ExperimentConfig& config) {
  std::vector<BatteryParams> batteries;
  for (const std::string& f : config.battery_files) {
    auto loaded = load_battery_file(f);
    batteries.insert(batteries.end(), loaded.begin(), loaded.end());
  }
  std::vector<std::vector<double>> series;
  for (const std::string& f : config.instance_files)
    series.push_back(load_series(f));
  if (batteries.empty() || series.empty())
    throw std::runtime_error("run_benchmark: empty battery or instance list");

  const long jobs = static_cast<long>(batteries.size()) *
                    static_cast<long>(series.size());
  const int npresets = static_cast<int>(config.presets.size());
  std::vector<CellResult> cells(jobs * npresets);

  std::atomic<long> next{0};
  auto worker = [&]() {
    while (true) {
      const long job = next.fetch_add(1);
      if (job >= jobs) break;
      const BatteryParams& bat = batteries[job / series.size()];
      const std::vector<double>& ser = series[job % series.size()];
      for (int pi = 0; pi < npresets; ++pi) {
        cells[job * npresets + pi] =
            run_cell(bat, ser, config.problem, config.presets[pi],
                     config.threshold, config.report_timing);
      }
    }
  };
  const int nthreads = std::max(1, config.parallelism);
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Single-threaded reduction in job order.
  int exact_idx = -1;
  for (int pi = 0; pi < npresets; ++pi)
    if (config.presets[pi] == Preset::MILP || config.presets[pi] == Preset::MIQP)
      exact_idx = pi;

  BenchResult result;
  result.total_instances = jobs;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int pi = 0; pi < npresets; ++pi) {
    BenchRow row;
    row.formulation = to_string(config.presets[pi]);
    long ok = 0, fail = 0, hours = 0, violated = 0;
    double prod_sum = 0.0, obj_sum = 0.0, time_sum = 0.0, exact_time_sum = 0.0;
    for (long job = 0; job < jobs; ++job) {
      const CellResult& cell = cells[job * npresets + pi];
      if (!cell.ok) {
        ++fail;
        continue;
      }
      ++ok;
      hours += cell.periods;
      violated += cell.violated_periods;
      prod_sum += cell.comp_product;
      obj_sum += cell.objective;
      if (exact_idx >= 0 && cells[job * npresets + exact_idx].ok) {
        // Delta time compares totals over jobs where both solves landed.
        time_sum += cell.time_ms;
        exact_time_sum += cells[job * npresets + exact_idx].time_ms;
      }
    }
    row.instances = ok;
    row.failures = fail;
    row.pct_hours_violated = hours > 0 ? 100.0 * violated / hours : 0.0;
    row.mean_comp_product = ok > 0 ? prod_sum / ok : 0.0;
    row.mean_obj = ok > 0 ? obj_sum / ok : 0.0;
    if (config.report_timing && exact_idx >= 0 && exact_time_sum > 0.0)
      row.delta_time_pct = 100.0 * (1.0 - time_sum / exact_time_sum);
    else
      row.delta_time_pct = nan;
    result.total_failures += fail;
    result.rows.push_back(std::move(row));
  }
  return result;
}

std::string emit_report(const std::vector<BenchRow>& rows,
                        const std::string& format) {
  if (rows.empty()) throw std::invalid_argument("emit_report: no rows");
  char buf[256];
  std::string out;
  auto num = [&](double v) -> std::string {
    if (std::isnan(v)) return "";
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
  };
  if (format == "csv") {
    out = "formulation,pct_hours_violated,mean_comp_product,delta_time_pct\n";
    for (const BenchRow& r : rows) {
      out += r.formulation + "," + num(r.pct_hours_violated) + "," +
             num(r.mean_comp_product) + "," + num(r.delta_time_pct) + "\n";
    }
    return out;
  }
  if (format == "markdown") {
    out =
        "| Formulation | Violated hours (%) | Mean p_ch*p_dis (kW^2) | Delta "
        "time (%) |\n|---|---|---|---|\n";
    for (const BenchRow& r : rows) {
      out += "| " + r.formulation + " | " + num(r.pct_hours_violated) + " | " +
             num(r.mean_comp_product) + " | " + num(r.delta_time_pct) +
             " |\n";
    }
    return out;
  }
  throw std::invalid_argument("emit_report: unknown format " + format);
}

std::vector<BenchRow> parse_report_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) ||
      line != "formulation,pct_hours_violated,mean_comp_product,delta_time_pct")
    throw std::runtime_error("report: bad header");
  std::vector<BenchRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    BenchRow row;
    std::istringstream ls(line);
    std::string field;
    std::getline(ls, field, ',');
    row.formulation = field;
    auto next_num = [&]() {
      std::getline(ls, field, ',');
      return field.empty() ? std::numeric_limits<double>::quiet_NaN()
                           : std::stod(field);
    };
    row.pct_hours_violated = next_num();
    row.mean_comp_product = next_num();
    row.delta_time_pct = next_num();
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace storcuts
