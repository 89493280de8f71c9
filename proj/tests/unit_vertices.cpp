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

#include <numeric>
#include <random>
#include <set>
#include <tuple>

#include "storcuts/vertices.hpp"
#include "testutil.hpp"

using namespace storcuts;

namespace {

// Exact rational arithmetic recount for two-period instances.
struct Rat {
  long long n = 0, d = 1;
  static long long gcd(long long a, long long b) {
    while (b) {
      const long long t = a % b;
      a = b;
      b = t;
    }
    return a < 0 ? -a : a;
  }
  void reduce() {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const long long g = gcd(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
  }
  Rat() = default;
  Rat(long long num, long long den = 1) : n(num), d(den) { reduce(); }
  Rat operator+(const Rat& o) const { return Rat(n * o.d + o.n * d, d * o.d); }
  Rat operator-(const Rat& o) const { return Rat(n * o.d - o.n * d, d * o.d); }
  Rat operator*(const Rat& o) const { return Rat(n * o.n, d * o.d); }
  Rat operator/(const Rat& o) const { return Rat(n * o.d, d * o.n); }
  bool operator==(const Rat& o) const { return n == o.n && d == o.d; }
  bool operator<(const Rat& o) const { return n * o.d < o.n * d; }
  bool operator<=(const Rat& o) const { return !(o < *this); }
};

// Vertices of one fixed-pattern polytope in exact arithmetic: all 2-subsets
// of the constraint rows solved by Cramer's rule.
std::set<std::array<std::pair<long long, long long>, 2>> rational_vertices(
    const std::array<Rat, 2>& cap, const std::array<Rat, 2>& sigma, Rat s0,
    Rat lo, Rat hi) {
  struct Row {
    std::array<Rat, 2> a;
    Rat b;
  };
  std::vector<Row> rows;
  for (int t = 0; t < 2; ++t) {
    std::array<Rat, 2> e{Rat(0), Rat(0)};
    e[t] = Rat(1);
    rows.push_back({e, Rat(0)});
    rows.push_back({e, cap[t]});
  }
  rows.push_back({{sigma[0], Rat(0)}, lo - s0});
  rows.push_back({{sigma[0], Rat(0)}, hi - s0});
  rows.push_back({{sigma[0], sigma[1]}, lo - s0});
  rows.push_back({{sigma[0], sigma[1]}, hi - s0});

  std::set<std::array<std::pair<long long, long long>, 2>> verts;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      const Rat det =
          rows[i].a[0] * rows[j].a[1] - rows[i].a[1] * rows[j].a[0];
      if (det.n == 0) continue;
      const Rat x =
          (rows[i].b * rows[j].a[1] - rows[i].a[1] * rows[j].b) / det;
      const Rat y =
          (rows[i].a[0] * rows[j].b - rows[i].b * rows[j].a[0]) / det;
      // Feasibility.
      bool ok = Rat(0) <= x && x <= cap[0] && Rat(0) <= y && y <= cap[1];
      const Rat s1 = s0 + sigma[0] * x;
      const Rat s2 = s1 + sigma[1] * y;
      ok = ok && lo <= s1 && s1 <= hi && lo <= s2 && s2 <= hi;
      if (ok) verts.insert({std::pair{x.n, x.d}, std::pair{y.n, y.d}});
    }
  }
  return verts;
}

}  // namespace

TEST_CASE("single-period vertices of an empty battery") {
  const BatteryParams p = testutil::b1(0.0, 1);
  // Charging branch: 0 and the effective rate; discharging branch: only 0.
  const auto charge = enumerate_pattern_vertices(p, 0b1);
  REQUIRE(charge.size() == 2);
  CHECK(charge[0].p_ch[0] == doctest::Approx(0.0));
  CHECK(charge[1].p_ch[0] == doctest::Approx(5.0));
  const auto discharge = enumerate_pattern_vertices(p, 0b0);
  REQUIRE(discharge.size() == 1);
  CHECK(discharge[0].p_dis[0] == doctest::Approx(0.0));

  const auto all = enumerate_vertices(p);
  CHECK(all.size() == 2);  // origin deduplicated across branches
}

TEST_CASE("every enumerated vertex is feasible") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 25; ++it) {
    const int T = 2 + static_cast<int>(rng() % 3);
    const BatteryParams p = testutil::random_battery(rng, T);
    const auto verts = enumerate_vertices(p);
    CHECK(!verts.empty());
    for (const Trajectory& v : verts) {
      CHECK(membership(p, v, FeasibleSet::P).member);
      CHECK(membership(p, v, FeasibleSet::P01).member);
    }
  }
}

TEST_CASE("effective rates leave every fixed-pattern vertex set unchanged") {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 20; ++it) {
    const int T = 2 + static_cast<int>(rng() % 3);
    const BatteryParams p = testutil::random_battery(rng, T);
    BatteryParams clipped = p;
    std::tie(clipped.p_dis_max, clipped.p_ch_max) = effective_rates(p);
    auto contains = [T](const std::vector<Trajectory>& set,
                        const Trajectory& v) {
      for (const Trajectory& w : set) {
        double d = 0.0;
        for (int t = 0; t < T; ++t) {
          d = std::max(d, std::fabs(v.p_ch[t] - w.p_ch[t]));
          d = std::max(d, std::fabs(v.p_dis[t] - w.p_dis[t]));
        }
        if (d <= 1e-7) return true;
      }
      return false;
    };
    for (std::uint32_t pattern = 0; pattern < (1u << T); ++pattern) {
      const auto va = enumerate_pattern_vertices(p, pattern);
      const auto vb = enumerate_pattern_vertices(clipped, pattern);
      REQUIRE(va.size() == vb.size());
      for (const Trajectory& v : va) CHECK(contains(vb, v));
      for (const Trajectory& v : vb) CHECK(contains(va, v));
    }
  }
}

TEST_CASE("rational recount agrees for two periods") {
  // Symmetric battery with simple rational data.
  BatteryParams p;
  p.p_dis_max = 3.0;
  p.p_ch_max = 3.0;
  p.soc_min = 0.0;
  p.soc_max = 4.0;
  p.eta_c = 1.0;
  p.eta_d = 1.0;
  p.delta = 1.0;
  p.soc_init = 2.0;
  p.horizon = 2;

  for (std::uint32_t pattern = 0; pattern < 4; ++pattern) {
    std::array<Rat, 2> cap, sigma;
    for (int t = 0; t < 2; ++t) {
      const bool ch = (pattern >> t) & 1u;
      cap[t] = Rat(3);
      sigma[t] = ch ? Rat(1) : Rat(-1);
    }
    const auto exact = rational_vertices(cap, sigma, Rat(2), Rat(0), Rat(4));
    const auto floats = enumerate_pattern_vertices(p, pattern);
    CHECK(floats.size() == exact.size());
  }

  // Lossy variant: efficiencies 4/5 and 9/10 stay rational.
  BatteryParams q = p;
  q.eta_c = 0.8;
  q.eta_d = 0.9;
  for (std::uint32_t pattern = 0; pattern < 4; ++pattern) {
    std::array<Rat, 2> cap, sigma;
    for (int t = 0; t < 2; ++t) {
      const bool ch = (pattern >> t) & 1u;
      cap[t] = Rat(3);
      sigma[t] = ch ? Rat(4, 5) : Rat(-10, 9);
    }
    const auto exact = rational_vertices(cap, sigma, Rat(2), Rat(0), Rat(4));
    const auto floats = enumerate_pattern_vertices(q, pattern);
    CHECK(floats.size() == exact.size());
  }
}

TEST_CASE("horizon guard") {
  const BatteryParams p = testutil::b1(0.0, 5);
  CHECK_THROWS_WITH_AS(enumerate_vertices(p),
                       doctest::Contains("horizon too large"),
                       std::invalid_argument);
}
