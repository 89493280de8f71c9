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

#include <tuple>

#include "storcuts/battery.hpp"
#include "storcuts/io.hpp"
#include "testutil.hpp"

using namespace storcuts;

TEST_CASE("effective rates clip by capacity or rating") {
  BatteryParams p = testutil::b1();
  auto [dis, ch] = effective_rates(p);
  CHECK(dis == doctest::Approx(5.0));
  CHECK(ch == doctest::Approx(5.0));

  p.eta_d = 0.9;
  std::tie(dis, ch) = effective_rates(p);
  CHECK(dis == doctest::Approx(4.5));

  p.p_dis_max = 1.0;
  p.soc_max = 100.0;
  std::tie(dis, ch) = effective_rates(p);
  CHECK(dis == doctest::Approx(1.0));  // rating binds
}

TEST_CASE("SoC envelope recursion and per-period rates") {
  const BatteryParams p = testutil::b1(0.0, 3);
  const EffectiveEnvelope env = soc_envelope(p);
  CHECK(env.soc_lo == std::vector<double>{0.0, 0.0, 0.0});
  CHECK(env.soc_hi == std::vector<double>{0.0, 5.0, 5.0});

  const BatteryParams p2 = testutil::b1(2.0, 3);
  const EffectiveEnvelope env2 = soc_envelope(p2);
  CHECK(env2.soc_lo == std::vector<double>{2.0, 0.0, 0.0});
  CHECK(env2.soc_hi == std::vector<double>{2.0, 5.0, 5.0});
  CHECK(env2.p_dis_eff_t[0] == doctest::Approx(2.0));
}

TEST_CASE("envelope monotone and clamped for random batteries") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 50; ++it) {
    const BatteryParams p = testutil::random_battery(rng, 8);
    const EffectiveEnvelope env = soc_envelope(p);
    for (int k = 1; k < p.horizon; ++k) {
      CHECK(env.soc_lo[k] <= env.soc_lo[k - 1] + 1e-12);
      CHECK(env.soc_hi[k] >= env.soc_hi[k - 1] - 1e-12);
    }
    for (int k = 0; k < p.horizon; ++k) {
      CHECK(env.soc_lo[k] >= p.soc_min - 1e-12);
      CHECK(env.soc_hi[k] <= p.soc_max + 1e-12);
      CHECK(env.soc_lo[k] <= env.soc_hi[k] + 1e-12);
      CHECK(env.p_ch_eff_t[k] <= env.p_ch_eff + 1e-12);
      CHECK(env.p_dis_eff_t[k] <= env.p_dis_eff + 1e-12);
      CHECK(env.p_ch_eff_t[k] >= -1e-12);
      CHECK(env.p_dis_eff_t[k] >= -1e-12);
    }
    CHECK(env.p_dis_eff <= p.p_dis_max + 1e-12);
    CHECK(env.p_ch_eff <= p.p_ch_max + 1e-12);
  }
}

TEST_CASE("SoC simulation") {
  const BatteryParams p = testutil::b1();
  const Trajectory traj = simulate_soc(p, {0.0, 5.0, 0.0}, {5.0, 0.0, 0.0});
  CHECK(traj.soc == std::vector<double>{5.0, 0.0, 0.0});

  BatteryParams lossy = testutil::b1();
  lossy.eta_c = 0.8;
  CHECK(simulate_soc(lossy, {0, 0, 0}, {10, 0, 0}).soc[0] ==
        doctest::Approx(8.0));

  BatteryParams lossy_d = testutil::b1(0.0, 3);
  lossy_d.soc_max = 8.0;
  lossy_d.soc_init = 8.0;
  lossy_d.eta_d = 0.8;
  CHECK(simulate_soc(lossy_d, {6.4, 0, 0}, {0, 0, 0}).soc[0] ==
        doctest::Approx(0.0));

  CHECK_THROWS_AS(simulate_soc(p, {0.0}, {0.0}), std::invalid_argument);
}

TEST_CASE("membership in the three set descriptions") {
  const BatteryParams p = testutil::b1();
  Trajectory feasible = simulate_soc(p, {0, 0, 0}, {5, 0, 0});
  const MembershipReport rep = membership(p, feasible, FeasibleSet::P);
  CHECK(rep.member);
  CHECK(rep.complementarity == 0.0);

  // Simultaneous charge and discharge: outside P, inside the relaxation
  // with a half mode.
  Trajectory simult = simulate_soc(p, {0, 1, 0}, {5, 1, 0});
  const MembershipReport bad = membership(p, simult, FeasibleSet::P);
  CHECK_FALSE(bad.member);
  CHECK(bad.complementarity == doctest::Approx(1.0));
  simult.mode = std::vector<double>{1.0, 0.5, 0.0};
  CHECK(membership(p, simult, FeasibleSet::PR).member);
  CHECK_FALSE(membership(p, simult, FeasibleSet::P01).member);

  // Mode exclusivity: discharging while flagged as charging.
  Trajectory wrong_mode = simulate_soc(p, {0, 3, 0}, {5, 0, 0});
  wrong_mode.mode = std::vector<double>{1.0, 1.0, 0.0};
  const MembershipReport excl = membership(p, wrong_mode, FeasibleSet::P01);
  CHECK_FALSE(excl.member);
  CHECK(excl.rate_bound == doctest::Approx(3.0));

  CHECK_THROWS_AS(membership(p, feasible, FeasibleSet::P01),
                  std::invalid_argument);
}

TEST_CASE("membership in P implies membership in the relaxation") {
  std::mt19937_64 rng(21);
  for (int it = 0; it < 30; ++it) {
    const BatteryParams p = testutil::random_battery(rng, 6);
    const auto [pde, pce] = effective_rates(p);
    // Alternating feasible profile clipped to capacity.
    std::vector<double> p_ch(p.horizon, 0.0), p_dis(p.horizon, 0.0);
    double s = p.soc_init;
    for (int t = 0; t < p.horizon; ++t) {
      if (t % 2 == 0) {
        p_ch[t] = std::min(pce, (p.soc_max - s) / (p.delta * p.eta_c)) * 0.9;
        s += p.delta * p.eta_c * p_ch[t];
      } else {
        p_dis[t] = std::min(pde, (s - p.soc_min) * p.eta_d / p.delta) * 0.9;
        s -= p.delta * p_dis[t] / p.eta_d;
      }
    }
    Trajectory traj = simulate_soc(p, p_dis, p_ch);
    REQUIRE(membership(p, traj, FeasibleSet::P).member);
    std::vector<double> mode(p.horizon);
    for (int t = 0; t < p.horizon; ++t) mode[t] = p_ch[t] > 0.0 ? 1.0 : 0.0;
    traj.mode = mode;
    CHECK(membership(p, traj, FeasibleSet::PR).member);
  }
}

TEST_CASE("violation metrics") {
  Trajectory traj;
  traj.p_ch = {0.0, 0.0};
  traj.p_dis = {0.0, 0.0};
  CHECK(violation_metrics(traj, 1e-4) == std::pair<int, double>{0, 0.0});

  traj.p_ch = {1.0, 0.0};
  traj.p_dis = {1.0, 2.0};
  auto [count, sum] = violation_metrics(traj, 1e-4);
  CHECK(count == 1);
  CHECK(sum == doctest::Approx(1.0));

  traj.p_ch = {1e-3, 1e-3};
  traj.p_dis = {1e-3, 0.0};
  std::tie(count, sum) = violation_metrics(traj, 1e-4);
  CHECK(count == 0);
  CHECK(sum == doctest::Approx(1e-6));
}

TEST_CASE("parameter validation") {
  BatteryParams p = testutil::b1();
  CHECK_NOTHROW(p.validate());
  p.soc_init = 9.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = testutil::b1();
  p.eta_c = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = testutil::b1();
  p.horizon = 0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("battery JSON round trip and errors") {
  const BatteryParams p = testutil::b1(2.0, 24);
  const BatteryParams q = battery_from_json(battery_to_json(p));
  CHECK(q.soc_init == p.soc_init);
  CHECK(q.horizon == p.horizon);
  CHECK(q.p_dis_max == p.p_dis_max);

  CHECK_THROWS_WITH_AS(
      battery_from_json(R"({"p_dis_max": 1})"),
      doctest::Contains("missing key"), std::runtime_error);
  CHECK_THROWS_AS(battery_from_json("not json"), std::runtime_error);
}
