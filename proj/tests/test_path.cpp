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

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "teer/path.hpp"
#include "teer/simulate.hpp"

using namespace teer;
using NC = NegativeClass;

namespace {

struct Curves {
  RateCurve asv, cm;
};

Curves random_curves(oracle::RandomScores& rs, std::size_t n_max) {
  return {asv_rate_curve(rs.asv(n_max)), cm_rate_curve(rs.cm(n_max))};
}

Curves simulated(std::size_t n, std::uint64_t seed = 1) {
  SimulationParams p;
  p.n_per_class = n;
  p.seed = seed;
  auto s = simulate_scores(p);
  return {asv_rate_curve(s.asv), cm_rate_curve(s.cm)};
}

}  // namespace

TEST_CASE("feasibility end points") {
  oracle::RandomScores rs(1);
  auto c = random_curves(rs, 30);
  for (double rho : {0.0, 0.3, 1.0}) {
    SpoofPrevalence r{rho};
    CHECK(asv_feasible(c.asv, r, 0));
    CHECK_FALSE(asv_feasible(c.asv, r, c.asv.last()));
    CHECK(cm_feasible(c.cm, r, 0));
  }
  CHECK_FALSE(cm_feasible(c.cm, SpoofPrevalence{0.0}, c.cm.last()));
}

TEST_CASE("feasible indices form a prefix") {
  oracle::RandomScores rs(2);
  for (int rep = 0; rep < 100; ++rep) {
    auto c = random_curves(rs, 50);
    for (int g = 0; g <= 10; ++g) {
      SpoofPrevalence r{g / 10.0};
      const std::size_t ka = asv_critical_index(c.asv, r), kc = cm_critical_index(c.cm, r);
      for (std::size_t i = 0; i < c.asv.size(); ++i) CHECK(asv_feasible(c.asv, r, i) == (i <= ka));
      for (std::size_t j = 0; j < c.cm.size(); ++j) CHECK(cm_feasible(c.cm, r, j) == (j <= kc));
    }
  }
}

TEST_CASE("path matches a full grid scan") {
  oracle::RandomScores rs(4);
  for (int rep = 0; rep < 30; ++rep) {
    auto c = random_curves(rs, 200);
    TandemGrid g(c.asv, c.cm);
    for (double rho : {0.0, 0.3, 1.0}) {
      auto path = build_teer_path(c.asv, c.cm, SpoofPrevalence{rho});
      auto brute = oracle::brute_path(g, rho);
      REQUIRE(path.entries.size() == brute.size());
      for (std::size_t k = 0; k < brute.size(); ++k) {
        CHECK(path.entries[k].asv_index == brute[k].i);
        CHECK(path.entries[k].cm_index == brute[k].j);
        CHECK(path.entries[k].teer == brute[k].teer);
      }
    }
  }
}

TEST_CASE("residual is bracketed by the sign change") {
  oracle::RandomScores rs(6);
  for (int rep = 0; rep < 30; ++rep) {
    auto c = random_curves(rs, 100);
    TandemGrid g(c.asv, c.cm);
    SpoofPrevalence r{rs.uniform()};
    for (const auto& e : build_teer_path(c.asv, c.cm, r).entries) {
      std::size_t k = 0;
      while (g.residual(r, e.asv_index, k) < 0) ++k;
      REQUIRE(k > 0);  // feasible rows start negative or at zero
      auto lo = g.at(e.asv_index, k - 1), hi = g.at(e.asv_index, k);
      const double step =
          std::max(hi.miss - lo.miss, tandem_fa_total(r, lo.fa_non, lo.fa_spf) -
                                          tandem_fa_total(r, hi.fa_non, hi.fa_spf));
      CHECK(std::abs(e.residual) <= step);
      CHECK(e.teer >= 0.0);
      CHECK(e.teer <= 1.0);
    }
  }
}

TEST_CASE("accept-all special cases") {
  auto c = simulated(5000);
  TandemGrid g(c.asv, c.cm);

  CHECK(teer_at_asv_index(g, SpoofPrevalence{0.0}, 0).teer == 0.5);

  auto cm_only = teer_at_asv_index(g, SpoofPrevalence{1.0}, 0);
  CHECK(std::abs(cm_only.teer - eer(c.cm, NC::Spoof).eer) <=
        local_grid_step(g, SpoofPrevalence{1.0}, 0, cm_only.cm_index));

  for (double rho : {0.0, 1.0}) {
    SpoofPrevalence r{rho};
    auto asv_only = teer_at_cm_index(g, r, 0);
    const double ref = eer(c.asv, rho == 0.0 ? NC::Nontarget : NC::Spoof).eer;
    CHECK(std::abs(asv_only.teer - ref) <= local_grid_step(g, r, asv_only.asv_index, 0));
  }
}

TEST_CASE("separated CM reduces the path to the ASV") {
  SimulationParams p;
  p.n_per_class = 5000;
  auto s = simulate_scores(p);
  CmScoreSet cm{std::vector<double>(s.cm.bona.size(), 10.0), std::vector<double>(100, -10.0)};
  auto asv = asv_rate_curve(s.asv);
  auto cmc = cm_rate_curve(cm);
  TandemGrid g(asv, cmc);
  auto path = build_teer_path(asv, cmc, SpoofPrevalence{0.0});
  auto e = eer(asv, NC::Nontarget);
  // The EER point may sit one step past the feasible prefix.
  const auto& at = path.entries[std::min(e.threshold_index, path.entries.size() - 1)];
  CHECK(std::abs(at.teer - e.eer) <= local_grid_step(g, SpoofPrevalence{0.0}, at.asv_index,
                                                     at.cm_index));
}

TEST_CASE("teer along the path") {
  auto c = simulated(20000);
  auto path = build_teer_path(c.asv, c.cm, SpoofPrevalence{1.0});
  auto pts = teer_along_path(path);
  REQUIRE(pts.size() == path.entries.size());
  CHECK(pts.front().asv_threshold == -std::numeric_limits<double>::infinity());

  // The rho = 1 path levels off at the CM EER once the ASV accepts everything.
  TandemGrid g(c.asv, c.cm);
  const auto& first = path.entries.front();
  CHECK(std::abs(first.teer - eer(c.cm, NC::Spoof).eer) <=
        local_grid_step(g, SpoofPrevalence{1.0}, 0, first.cm_index));
  CHECK(path.entries.back().teer > first.teer);

  TeerPath one;
  one.entries.resize(1);
  CHECK(teer_along_path(one).size() == 1);
}

TEST_CASE("threads do not change the path") {
  auto c = simulated(20000, 3);
  auto a = build_teer_path(c.asv, c.cm, SpoofPrevalence{0.4}, 1);
  auto b = build_teer_path(c.asv, c.cm, SpoofPrevalence{0.4}, 8);
  CHECK(path_csv_rows(a) == path_csv_rows(b));
}

TEST_CASE("path csv") {
  auto asv = asv_rate_curve({{0.0}, {0.0}, {0.0}});
  auto cm = cm_rate_curve({{1.0}, {-1.0}});
  auto path = build_teer_path(asv, cm, SpoofPrevalence{0.0});
  CHECK(path_csv_header() == "rho,asv_threshold,cm_threshold,teer,residual\n");
  CHECK(path_csv_rows(path) == "0,-inf,-inf,0.5,-1\n");
}
