// Copyright 2026  The teer Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.


#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "teer/concurrent.hpp"
#include "teer/simulate.hpp"

using namespace teer;

namespace {

struct Curves {
  RateCurve asv, cm;
};

Curves simulated(std::size_t n, std::uint64_t seed = 1) {
  SimulationParams p;
  p.n_per_class = n;
  p.seed = seed;
  auto s = simulate_scores(p);
  return {asv_rate_curve(s.asv), cm_rate_curve(s.cm)};
}

Curves perfect() {
  return {asv_rate_curve({{1.0, 2.0}, {-1.0, -2.0}, {-1.5}}),
          cm_rate_curve({{3.0, 4.0}, {-3.0}})};
}

}  // namespace

TEST_CASE("cross residual") {
  auto c = simulated(1000);
  CHECK(xpoint_residual(c.asv, c.cm, 0, 0) == 0.0);

  auto cm = cm_rate_curve({{1.0}, {-1.0}});  // index 1 separates perfectly
  for (std::size_t i = 0; i < c.asv.size(); i += 97)
    CHECK(xpoint_residual(c.asv, cm, i, 1) == c.asv.fa(NegativeClass::Nontarget)[i]);
}

TEST_CASE("perfect subsystems meet at zero") {
  auto c = perfect();
  auto p = concurrent_teer(c.asv, c.cm);
  CHECK(p.teer == 0.0);
  CHECK(p.rate_spread == 0.0);
  CHECK_FALSE(p.warning);
  auto rep = verify_intersection(c.asv, c.cm, {SpoofPrevalence{0}, SpoofPrevalence{1}});
  CHECK(rep.max_deviation == 0.0);
}

TEST_CASE("simulated concurrent point") {
  auto c = simulated(20000);
  auto oracle = oracle_concurrent_teer(SimulationParams{});
  auto p = concurrent_teer(c.asv, c.cm);
  CHECK_FALSE(p.warning);
  CHECK(p.sign_changes >= 1);
  CHECK(std::abs(p.teer - oracle.teer) <= 0.01);
  CHECK(std::abs(p.asv_threshold - oracle.tau_asv) <= 0.1);
  CHECK(std::abs(p.cm_threshold - oracle.tau_cm) <= 0.1);

  // Three-way equality and its consequences.
  CHECK(p.rate_spread <= 2 * p.grid_step);
  CHECK(std::abs(p.teer - c.asv.fa(NegativeClass::Spoof)[p.asv_index] *
                              c.cm.fa(NegativeClass::Spoof)[p.cm_index]) <= p.rate_spread);
  oracle::RandomScores rs(8);
  for (int rep = 0; rep < 200; ++rep) {
    double a = rs.uniform(), b = rs.uniform(), d = rs.uniform();
    TandemPriors pri{a / (a + b + d), b / (a + b + d), d / (a + b + d)};
    CHECK(std::abs(tandem_total_error(pri, p.rates) - p.teer) <= p.rate_spread);
  }

  auto one = verify_intersection(c.asv, c.cm, p, {SpoofPrevalence{0.5}});
  CHECK(one.rows.size() == 1);
  auto three = verify_intersection(
      c.asv, c.cm, p, {SpoofPrevalence{0}, SpoofPrevalence{0.5}, SpoofPrevalence{1}});
  CHECK(three.rows.size() == 3);
  CHECK(three.max_deviation <= 2 * p.grid_step);
}

TEST_CASE("the point lies on every path") {
  auto c = simulated(20000, 5);
  auto p0 = concurrent_teer(c.asv, c.cm, SpoofPrevalence{0.0});
  auto p1 = concurrent_teer(c.asv, c.cm, SpoofPrevalence{1.0});
  CHECK(std::abs(p0.teer - p1.teer) <= 2 * std::max(p0.grid_step, p1.grid_step));
}

TEST_CASE("rate spread shrinks with more data") {
  double prev = 1.0;
  for (std::size_t n : {1000u, 10000u, 100000u}) {
    auto c = simulated(n, 2);
    auto p = concurrent_teer(c.asv, c.cm, SpoofPrevalence{0.0}, 4);
    CHECK(p.rate_spread <= 2 * prev);  // allow sampling noise between sizes
    prev = p.rate_spread;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("the cross residual changes sign around the oracle root") {
  auto c = simulated(50000, 9);
  auto oracle = oracle_concurrent_teer(SimulationParams{});
  auto path = build_teer_path(c.asv, c.cm, SpoofPrevalence{0.0});
  TandemGrid g(c.asv, c.cm);
  double below = 0.0, above = 0.0;
  for (const auto& e : path.entries) {
    if (e.asv_index == 0) continue;
    const double x = xpoint_residual(c.asv, c.cm, e.asv_index, e.cm_index);
    if (e.asv_threshold < oracle.tau_asv - 0.2) below = x;
    if (e.asv_threshold > oracle.tau_asv + 0.2 && above == 0.0) above = x;
  }
  CHECK(below * above < 0.0);
}
