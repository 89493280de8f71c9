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

#include <random>

#include "storcuts/model.hpp"
#include "storcuts/qp.hpp"
#include "testutil.hpp"

using namespace storcuts;

namespace {

ProblemInstance scheduling(std::vector<double> prices) {
  return {ProblemInstance::Kind::Scheduling, std::move(prices)};
}

ProblemInstance tracking(std::vector<double> setpoints) {
  return {ProblemInstance::Kind::Tracking, std::move(setpoints)};
}

}  // namespace

TEST_CASE("plain QP solves a strictly convex box problem") {
  // min (x0-1)^2 + (x1+2)^2 over [0,3]^2 with x0 + x1 <= 2.
  qp::Problem prob;
  prob.num_vars = 2;
  prob.hessian = {2, 0, 0, 2};
  prob.linear = {-2, 4};
  prob.obj_offset = 5;
  prob.lo = {0, 0};
  prob.hi = {3, 3};
  prob.rows.push_back({{{0, 1.0}, {1, 1.0}}, lp::RowSense::LE, 2.0});
  const auto res = qp::solve(prob);
  REQUIRE(res.status == qp::Status::Optimal);
  CHECK(res.x[0] == doctest::Approx(1.0));
  CHECK(res.x[1] == doctest::Approx(0.0));
  CHECK(res.objective == doctest::Approx(4.0));
}

TEST_CASE("QP with singular Hessian rides the flat direction") {
  // min (x0 - x1 - 1)^2 over [0,2]^2: a whole segment of optima.
  qp::Problem prob;
  prob.num_vars = 2;
  prob.hessian = {2, -2, -2, 2};
  prob.linear = {-2, 2};
  prob.obj_offset = 1;
  prob.lo = {0, 0};
  prob.hi = {2, 2};
  const auto res = qp::solve(prob);
  REQUIRE(res.status == qp::Status::Optimal);
  CHECK(res.objective == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(res.x[0] - res.x[1] == doctest::Approx(1.0));
}

TEST_CASE("infeasible QP reports infeasible") {
  qp::Problem prob;
  prob.num_vars = 1;
  prob.hessian = {2};
  prob.linear = {0};
  prob.lo = {0};
  prob.hi = {1};
  prob.rows.push_back({{{0, 1.0}}, lp::RowSense::GE, 2.0});
  CHECK(qp::solve(prob).status == qp::Status::Infeasible);
}

TEST_CASE("reachable setpoint tracks exactly") {
  const BatteryParams p = testutil::b1(2.5, 3);
  // One discharge the battery can deliver, zero elsewhere.
  const auto model = build_preset(p, Preset::MIQP, tracking({2.0, 0.0, 0.0}));
  const SolveReport rep = solve_model(model);
  REQUIRE(rep.status == SolveStatus::Optimal);
  CHECK(rep.objective == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(rep.trajectory.p_dis[0] == doctest::Approx(2.0));
}

TEST_CASE("zero setpoints mean an idle battery") {
  const BatteryParams p = testutil::b1(2.5, 3);
  for (Preset preset : {Preset::MIQP, Preset::HCHLP, Preset::TLP,
                        Preset::TLPSOC}) {
    const auto model = build_preset(p, preset, tracking({0.0, 0.0, 0.0}));
    const SolveReport rep = solve_model(model);
    REQUIRE(rep.status == SolveStatus::Optimal);
    CHECK(rep.objective == doctest::Approx(0.0).epsilon(1e-9));
  }
}

TEST_CASE("scheduling example with a negative price") {
  // Charge cheap, discharge dear.
  BatteryParams p = testutil::b1(0.0, 2);
  const auto model = build_preset(p, Preset::MILP, scheduling({-10.0, 50.0}));
  const SolveReport rep = solve_model(model);
  REQUIRE(rep.status == SolveStatus::Optimal);
  CHECK(rep.objective == doctest::Approx(300.0));
  CHECK(rep.min_form_objective() == doctest::Approx(-300.0));
  CHECK(rep.violation.first == 0);
}

TEST_CASE("no arbitrage under uniform prices and losses") {
  BatteryParams p = testutil::b1(0.0, 4);
  p.eta_c = 0.9;
  p.eta_d = 0.9;
  const auto model =
      build_preset(p, Preset::MILP, scheduling({20.0, 20.0, 20.0, 20.0}));
  const SolveReport rep = solve_model(model);
  REQUIRE(rep.status == SolveStatus::Optimal);
  CHECK(rep.objective == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("branch and bound agrees with exhaustive enumeration") {
  std::mt19937_64 rng(42);
  for (int it = 0; it < 25; ++it) {
    const int T = 2 + static_cast<int>(rng() % 7);
    const BatteryParams p = testutil::random_battery(rng, T);
    const auto prices = testutil::random_prices(rng, T);
    const auto model = build_preset(p, Preset::MILP, scheduling(prices));
    const SolveReport bb = solve_bb(model);
    const SolveReport ex = solve_exhaustive(model);
    REQUIRE(bb.status == SolveStatus::Optimal);
    REQUIRE(ex.status == SolveStatus::Optimal);
    CHECK(bb.objective ==
          doctest::Approx(ex.objective).epsilon(0).scale(1).epsilon(1e-6));
    // The incumbent is genuinely feasible.
    CHECK(membership(p, bb.trajectory, FeasibleSet::P01).member);
    CHECK(membership(p, bb.trajectory, FeasibleSet::P).member);
  }
}

TEST_CASE("tracking MIQP agrees with pattern enumeration") {
  std::mt19937_64 rng(43);
  for (int it = 0; it < 10; ++it) {
    const int T = 3;
    const BatteryParams p = testutil::random_battery(rng, T);
    const auto [pde, pce] = effective_rates(p);
    const auto sp = testutil::random_setpoints(rng, T, 0.8 * (pde + pce));
    const auto model = build_preset(p, Preset::MIQP, tracking(sp));
    const SolveReport bb = solve_bb(model);
    const SolveReport ex = solve_exhaustive(model);
    REQUIRE(bb.status == SolveStatus::Optimal);
    REQUIRE(ex.status == SolveStatus::Optimal);
    CHECK(bb.objective ==
          doctest::Approx(ex.objective)
              .epsilon(0)
              .scale(1.0 + std::fabs(ex.objective))
              .epsilon(1e-6));
  }
}

TEST_CASE("relaxation sandwich on scheduling instances") {
  std::mt19937_64 rng(44);
  for (int it = 0; it < 15; ++it) {
    const int T = 2 + static_cast<int>(rng() % 5);
    const BatteryParams p = testutil::random_battery(rng, T);
    const auto prices = testutil::random_prices(rng, T);
    double vals[4];
    const Preset presets[4] = {Preset::HCHLP, Preset::TLP, Preset::TLPu,
                               Preset::MILP};
    for (int i = 0; i < 4; ++i) {
      const SolveReport rep =
          solve_model(build_preset(p, presets[i], scheduling(prices)));
      REQUIRE(rep.status == SolveStatus::Optimal);
      vals[i] = rep.min_form_objective();
    }
    const double scale = 1.0 + std::fabs(vals[3]);
    CHECK(vals[0] <= vals[1] + 1e-6 * scale);
    CHECK(vals[1] <= vals[2] + 1e-6 * scale);
    CHECK(vals[2] <= vals[3] + 1e-6 * scale);
  }
}

TEST_CASE("valid cuts do not change the exact optimum") {
  std::mt19937_64 rng(45);
  for (int it = 0; it < 10; ++it) {
    const int T = 2 + static_cast<int>(rng() % 4);
    const BatteryParams p = testutil::random_battery(rng, T);
    const auto prices = testutil::random_prices(rng, T);
    const auto plain = build_preset(p, Preset::MILP, scheduling(prices));
    RelaxationModel strengthened = plain;
    strengthened.cuts = redundancy_filter(gen_window_cuts(p), p);
    const auto ucuts = gen_u_cuts(p);
    strengthened.cuts.insert(strengthened.cuts.end(), ucuts.begin(),
                             ucuts.end());
    const SolveReport a = solve_bb(plain);
    const SolveReport b = solve_bb(strengthened);
    REQUIRE(a.status == SolveStatus::Optimal);
    REQUIRE(b.status == SolveStatus::Optimal);
    CHECK(a.objective == doctest::Approx(b.objective)
                             .epsilon(0)
                             .scale(1.0 + std::fabs(a.objective))
                             .epsilon(1e-6));
  }
}

TEST_CASE("substituted cylinder QP equals the explicit epigraph solve") {
  std::mt19937_64 rng(46);
  for (int it = 0; it < 10; ++it) {
    const int T = 4;
    const BatteryParams p = testutil::random_battery(rng, T);
    const auto [pde, pce] = effective_rates(p);
    const auto sp = testutil::random_setpoints(rng, T, 0.7 * (pde + pce));
    const auto model = build_preset(p, Preset::TLPSOC, tracking(sp));
    const SolveReport direct = solve_model(model);
    const SolveReport epi = solve_epigraph(model);
    REQUIRE(direct.status == SolveStatus::Optimal);
    REQUIRE(epi.status == SolveStatus::Optimal);
    CHECK(direct.objective ==
          doctest::Approx(epi.objective)
              .epsilon(0)
              .scale(1.0 + std::fabs(direct.objective))
              .epsilon(1e-7));
  }
}

TEST_CASE("cylinder relaxation never beats the plain tracking bound") {
  std::mt19937_64 rng(47);
  for (int it = 0; it < 10; ++it) {
    const int T = 3 + static_cast<int>(rng() % 2);
    const BatteryParams p = testutil::random_battery(rng, T);
    const auto [pde, pce] = effective_rates(p);
    const auto sp = testutil::random_setpoints(rng, T, 0.7 * (pde + pce));
    const SolveReport soc =
        solve_model(build_preset(p, Preset::TLPSOC, tracking(sp)));
    const SolveReport hch =
        solve_model(build_preset(p, Preset::HCHLP, tracking(sp)));
    REQUIRE(soc.status == SolveStatus::Optimal);
    REQUIRE(hch.status == SolveStatus::Optimal);
    CHECK(soc.objective >=
          hch.objective - 1e-6 * (1.0 + std::fabs(hch.objective)));
  }
}

TEST_CASE("relaxed-mode bound on a single charge variable") {
  // Maximize the first-period charge over the mode relaxation: the linking
  // row allows the full rating, the SoC chain caps it at the room.
  const BatteryParams p = testutil::b1(0.0, 3);
  RelaxationModel m;
  m.params = p;
  m.num_periods = 3;
  m.has_u = true;
  m.u_link = true;
  m.soc_chain = true;
  m.ch_hi.assign(3, p.p_ch_max);
  m.dis_hi.assign(3, p.p_dis_max);
  m.objective = ObjectiveKind::Linear;
  m.maximize = true;
  m.prices = {-1.0, 0.0, 0.0};  // revenue -(p_dis - p_ch) rewards charging
  const SolveReport rep = solve_relaxation(m);
  REQUIRE(rep.status == SolveStatus::Optimal);
  CHECK(rep.trajectory.p_ch[0] == doctest::Approx(5.0));
  CHECK(rep.objective == doctest::Approx(5.0));
}

TEST_CASE("preset and instance kinds must match") {
  const BatteryParams p = testutil::b1(0.0, 2);
  CHECK_THROWS_AS(build_preset(p, Preset::MILP, tracking({0, 0})),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_preset(p, Preset::TLPSOC, scheduling({0, 0})),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_preset(p, Preset::TLP, scheduling({0})),
                  std::invalid_argument);
}

TEST_CASE("optimal reports re-check feasibility") {
  std::mt19937_64 rng(48);
  for (int it = 0; it < 10; ++it) {
    const int T = 2 + static_cast<int>(rng() % 3);
    const BatteryParams p = testutil::random_battery(rng, T);
    const auto prices = testutil::random_prices(rng, T);
    for (Preset preset : {Preset::HCHLP, Preset::TLP, Preset::TLPu}) {
      const SolveReport rep =
          solve_model(build_preset(p, preset, scheduling(prices)));
      REQUIRE(rep.status == SolveStatus::Optimal);
      CHECK(rep.max_residual <= 1e-7);
    }
  }
}
