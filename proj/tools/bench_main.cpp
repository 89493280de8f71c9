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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "storcuts/cuts.hpp"
#include "storcuts/io.hpp"
#include "storcuts/model.hpp"
#include "storcuts/runner.hpp"
#include "storcuts/series.hpp"
#include "storcuts/soc.hpp"
#include "storcuts/submodular.hpp"
#include "storcuts/vertices.hpp"

namespace {

using namespace storcuts;

int cmd_run(const std::string& config_path) {
  ExperimentConfig cfg;
  try {
    cfg = ExperimentConfig::from_json_file(config_path);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }
  BenchResult result;
  try {
    result = run_benchmark(cfg);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }
  const std::string report = emit_report(result.rows, cfg.format);
  if (!cfg.output.empty()) {
    const std::filesystem::path out(cfg.output);
    if (out.has_parent_path()) {
      std::error_code ec;
      std::filesystem::create_directories(out.parent_path(), ec);
    }
    std::ofstream f(out);
    if (!f) {
      std::cerr << "cannot write report to " << cfg.output << "\n";
      return 1;
    }
    f << report;
  }
  std::cout << report;
  std::cout << "# instances per preset: " << result.total_instances
            << ", failures: " << result.total_failures << "\n";
  return result.total_failures > 0 ? 2 : 0;
}

int cmd_cuts(const std::string& battery_path, const std::string& family,
             const std::string& out_path, bool no_filter,
             const std::string& setpoints_path) {
  BatteryParams params;
  try {
    params = load_battery(battery_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::string csv;
  std::size_t count = 0;
  if (family == "soc") {
    if (setpoints_path.empty()) {
      std::cerr << "error: --family soc needs --setpoints <csv>\n";
      return 1;
    }
    const auto setpoints = load_series(setpoints_path);
    csv = soc_cuts_to_csv(setpoints);
    count = setpoints.size();
  } else {
    std::vector<LinearCut> cuts;
    if (family == "window") {
      cuts = gen_window_cuts(params);
      if (!no_filter) cuts = redundancy_filter(cuts, params);
    } else if (family == "u") {
      cuts = gen_u_cuts(params);
    } else if (family == "pozo") {
      cuts = gen_pozo_cuts(params);
    } else {
      std::cerr << "error: unknown family '" << family
                << "' (expected window|u|pozo|soc)\n";
      return 1;
    }
    csv = cuts_to_csv(cuts);
    count = cuts.size();
  }
  std::ofstream f(out_path);
  if (!f) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return 1;
  }
  f << csv;
  std::cout << "wrote " << count << " cuts to " << out_path << "\n";
  return 0;
}

bool report_line(const char* what, bool ok, double value) {
  std::printf("[%s] %-44s %.3g\n", ok ? "PASS" : "FAIL", what, value);
  return ok;
}

// Property and certificate sweep over one battery.
int cmd_verify(const std::string& battery_path, int horizon) {
  BatteryParams params;
  try {
    params = load_battery(battery_path);
    if (horizon > 0) params.horizon = horizon;
    params.validate();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  bool all_ok = true;
  const EffectiveEnvelope env = soc_envelope(params);
  const int T = params.horizon;

  {
    // Diminishing gains over the leading window.
    WindowSpec win;
    win.start = 0;
    win.length = std::min(T, 5);
    win.soc_start = params.soc_init;
    win.params = params;
    const CertificateReport cert = check_submodularity(win);
    const double margin =
        std::min(std::min(cert.min_margin_f, cert.min_margin_g),
                 std::min(cert.min_margin_fbar, cert.min_margin_gbar));
    all_ok &= report_line("submodularity certificate (min margin)", cert.pass,
                          margin);
  }
  {
    // Closed form vs LP on every subset of the leading window.
    WindowSpec win;
    win.start = 0;
    win.length = std::min(T, 5);
    win.soc_start = env.soc_lo[0];
    win.params = params;
    double worst = 0.0;
    for (std::uint64_t omega = 0; omega < (1ull << win.length); ++omega) {
      worst = std::max(worst, std::fabs(eval_f_closed(win, omega) -
                                        eval_f_lp(win, omega)));
      worst = std::max(
          worst, std::fabs(eval_g(win, omega) - eval_g_lp(win, omega)));
    }
    all_ok &= report_line("closed form vs LP oracle (max gap)", worst <= 1e-9,
                          worst);
  }
  {
    // Credits match the window-function gains.
    const CoefficientTable table(params);
    double worst = 0.0;
    for (int t0 = 0; t0 < T; ++t0) {
      for (int k = 0; k < std::min(T - t0, 6); ++k) {
        WindowSpec lo{t0, k + 1, env.soc_lo[t0], params};
        WindowSpec hi{t0, k + 1, env.soc_hi[t0], params};
        for (int tau = 0; tau <= k; ++tau) {
          worst = std::max(worst, std::fabs(-table.rho_c(t0, tau, k) -
                                            gain(WindowFn::FBar, lo, tau, 0)));
          worst = std::max(worst, std::fabs(-table.rho_d(t0, tau, k) -
                                            gain(WindowFn::G, hi, tau, 0)));
        }
      }
    }
    all_ok &= report_line("credit terms vs gains (max gap)", worst <= 1e-9,
                          worst);
  }
  if (T <= 4) {
    std::vector<LinearCut> cuts = gen_window_cuts(params);
    const auto ucuts = gen_u_cuts(params);
    cuts.insert(cuts.end(), ucuts.begin(), ucuts.end());
    const auto pozo = gen_pozo_cuts(params);
    cuts.insert(cuts.end(), pozo.begin(), pozo.end());
    const ValidityReport validity = validate_cuts(cuts, params);
    all_ok &= report_line("cut validity on enumerated vertices", validity.pass,
                          validity.max_violation);
    int certified = 0, passed = 0;
    for (const LinearCut& cut : gen_window_cuts(params)) {
      if (cut.family != CutFamily::WindowCharge &&
          cut.family != CutFamily::WindowDischarge &&
          cut.family != CutFamily::SingleperiodBox)
        continue;
      const FacetCertificate cert = facet_certificate(cut, params);
      if (cert.skipped) continue;
      ++certified;
      passed += cert.pass ? 1 : 0;
    }
    all_ok &= report_line("facet certificates (tight-count rule)",
                          certified == passed, certified);
  } else {
    std::printf("[SKIP] vertex-based checks need horizon <= 4 (got %d)\n", T);
  }
  {
    // Baseline dominance via LP maximization of each baseline cut.
    const auto tlp = redundancy_filter(gen_window_cuts(params), params);
    const auto [pde, pce] = effective_rates(params);
    double worst = -1e300;
    for (const LinearCut& cut : gen_pozo_cuts(params)) {
      lp::Problem prob;
      for (int t = 0; t < T; ++t) prob.add_var(0.0, pce);
      for (int t = 0; t < T; ++t) prob.add_var(0.0, pde);
      for (const LinearCut& c : tlp) {
        lp::Row row;
        row.sense = lp::RowSense::LE;
        row.rhs = c.rhs;
        for (auto [t, v] : c.coeff_ch) row.coeffs.push_back({t, v});
        for (auto [t, v] : c.coeff_dis) row.coeffs.push_back({T + t, v});
        prob.rows.push_back(std::move(row));
      }
      prob.objective.assign(2 * T, 0.0);
      for (auto [t, v] : cut.coeff_ch) prob.objective[t] -= v;
      for (auto [t, v] : cut.coeff_dis) prob.objective[T + t] -= v;
      const lp::Result res = lp::solve(prob);
      if (res.status != lp::Status::Optimal) {
        worst = 1e300;
        break;
      }
      worst = std::max(worst, -res.objective - cut.rhs);
    }
    all_ok &= report_line("baseline cuts dominated (max violation)",
                          worst <= 1e-8, worst);
  }
  {
    // Relaxation sandwich on a fixed synthetic price vector.
    std::vector<double> prices(T);
    for (int t = 0; t < T; ++t)
      prices[t] = 40.0 * std::sin(1.7 * t + 0.3) - 12.0;
    ProblemInstance inst{ProblemInstance::Kind::Scheduling, prices};
    double last = -1e300;
    bool ordered = true;
    for (Preset preset :
         {Preset::HCHLP, Preset::TLP, Preset::TLPu, Preset::MILP}) {
      const SolveReport rep = solve_model(build_preset(params, preset, inst));
      if (rep.status != SolveStatus::Optimal) {
        ordered = false;
        break;
      }
      const double v = rep.min_form_objective();
      if (v < last - 1e-6 * (1.0 + std::fabs(v))) ordered = false;
      last = v;
    }
    all_ok &= report_line("relaxation sandwich (min form)", ordered, last);
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"battery storage valid-inequality toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  CLI::App* run = app.add_subcommand("run", "run a benchmark sweep");
  run->add_option("--config", config_path, "experiment config JSON")
      ->required();

  std::string battery_path, family = "window", out_path = "cuts.csv";
  std::string setpoints_path;
  bool no_filter = false;
  CLI::App* cuts = app.add_subcommand("cuts", "export a cut pool as CSV");
  cuts->add_option("--battery", battery_path, "battery JSON file")->required();
  cuts->add_option("--family", family, "window|u|pozo|soc");
  cuts->add_option("--out", out_path, "output CSV path");
  cuts->add_option("--setpoints", setpoints_path,
                   "tracking setpoint series (soc family)");
  cuts->add_flag("--no-filter", no_filter, "skip the redundancy filter");

  std::string verify_battery;
  int horizon = 0;
  CLI::App* verify =
      app.add_subcommand("verify", "run the property and certificate suite");
  verify->add_option("--battery", verify_battery, "battery JSON file")
      ->required();
  verify->add_option("--horizon", horizon, "override the battery horizon");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 1 : 0;
  }

  try {
    if (run->parsed()) return cmd_run(config_path);
    if (cuts->parsed())
      return cmd_cuts(battery_path, family, out_path, no_filter,
                      setpoints_path);
    if (verify->parsed()) return cmd_verify(verify_battery, horizon);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
