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
#include "teer/error.hpp"
#include "teer/simulate.hpp"

using namespace teer;
using NC = NegativeClass;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Frozen output of oracle_concurrent_teer for the default parameters.
constexpr double kGoldenTeer = 0.11446524357357993;
constexpr double kGoldenTauAsv = -1.6493226338772651;
constexpr double kGoldenTauCm = -1.4885077237092119;

TandemRates tandem_at(const SubsystemRates& r) {
  return {tandem_miss(r.cm_miss, r.asv_miss), tandem_fa_non(r.cm_miss, r.asv_fa_non),
          tandem_fa_spf(r.cm_fa, r.asv_fa_spf)};
}

}  // namespace

TEST_CASE("separation from EER") {
  CHECK(gaussian_separation(normal_cdf(-1.0)) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(gaussian_separation(0.4999999) < 1e-5);
  CHECK(gaussian_separation(0.4999999) > 0.0);
  for (int k = 1; k <= 49; ++k) {
    const double e = k / 100.0;
    CHECK(std::abs(normal_cdf(-gaussian_separation(e) / 2) - e) <= 1e-8);
  }
  CHECK_THROWS_AS(gaussian_separation(0.5), InputError);
  CHECK_THROWS_AS(gaussian_separation(0.0), InputError);
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-14));
}

TEST_CASE("parameter validation") {
  SimulationParams p;
  CHECK_NOTHROW(p.validate());
  p.eer_cm = 0.6;
  CHECK_THROWS_AS(p.validate(), InputError);
  p = {};
  p.n_per_class = 0;
  CHECK_THROWS_AS(p.validate(), InputError);
}

TEST_CASE("simulation is deterministic and self-consistent") {
  SimulationParams p;
  p.n_per_class = 2000;
  auto a = simulate_scores(p), b = simulate_scores(p);
  CHECK(a.asv.tar == b.asv.tar);
  CHECK(a.cm.spf == b.cm.spf);
  CHECK(a.paired.rows == b.paired.rows);
  CHECK(a.paired.rows.size() == 3 * p.n_per_class);
  CHECK(a.cm.bona.size() == 2 * p.n_per_class);

  auto cm = cm_scores_from_paired(a.paired);
  CHECK(cm.bona == a.cm.bona);
  CHECK(cm.spf == a.cm.spf);
  CHECK(asv_scores_from_paired(a.paired).non == a.asv.non);

  p.seed = 2;
  CHECK(simulate_scores(p).asv.tar != a.asv.tar);
}

TEST_CASE("equal ASV EERs share a mean") {
  SimulationParams p{0.2, 0.2, 0.1, 1, 1};
  for (double t : {-3.0, -0.4, 0.0, 1.7}) {
    auto r = oracle_rates(p, t, 0.0);
    CHECK(r.asv_fa_non == r.asv_fa_spf);
  }
}

TEST_CASE("empirical rates follow the oracle") {
  SimulationParams p;
  p.n_per_class = 100000;
  auto s = simulate_scores(p);
  auto asv = asv_rate_curve(s.asv);
  auto cm = cm_rate_curve(s.cm);
  CHECK(std::abs(eer(asv, NC::Nontarget).eer - p.eer_asv_non) <= 0.005);
  CHECK(std::abs(eer(asv, NC::Spoof).eer - p.eer_asv_spf) <= 0.005);
  CHECK(std::abs(eer(cm, NC::Spoof).eer - p.eer_cm) <= 0.005);

  double worst = 0.0;
  for (int k = 0; k <= 20; ++k) {
    const double t = -4.0 + 0.3 * k;
    auto r = oracle_rates(p, t, t);
    const std::size_t i = asv.operating_index(t), j = cm.operating_index(t);
    worst = std::max({worst, std::abs(asv.miss()[i] - r.asv_miss),
                      std::abs(asv.fa(NC::Nontarget)[i] - r.asv_fa_non),
                      std::abs(asv.fa(NC::Spoof)[i] - r.asv_fa_spf),
                      std::abs(cm.miss()[j] - r.cm_miss), std::abs(cm.fa(NC::Spoof)[j] - r.cm_fa)});
  }
  CHECK(worst <= 0.01);
}

TEST_CASE("oracle rates") {
  SimulationParams p;
  auto lo = oracle_rates(p, -kInf, -kInf);
  CHECK(lo.asv_miss == 0.0);
  CHECK(lo.asv_fa_non == 1.0);
  CHECK(lo.asv_fa_spf == 1.0);
  CHECK(lo.cm_miss == 0.0);
  CHECK(lo.cm_fa == 1.0);
  const double mid = -gaussian_separation(p.eer_asv_non) / 2;
  auto r = oracle_rates(p, mid, 0.0);
  CHECK(r.asv_miss == doctest::Approx(p.eer_asv_non).epsilon(1e-12));
  CHECK(r.asv_fa_non == doctest::Approx(p.eer_asv_non).epsilon(1e-12));
}

TEST_CASE("oracle concurrent point") {
  auto o = oracle_concurrent_teer(SimulationParams{});
  CHECK(o.teer == doctest::Approx(kGoldenTeer).epsilon(1e-12));
  CHECK(o.tau_asv == doctest::Approx(kGoldenTauAsv).epsilon(1e-9));
  CHECK(o.tau_cm == doctest::Approx(kGoldenTauCm).epsilon(1e-9));

  auto rates = tandem_at(oracle_rates(SimulationParams{}, o.tau_asv, o.tau_cm));
  CHECK(rates.miss == doctest::Approx(o.teer).epsilon(1e-8));
  CHECK(rates.fa_non == doctest::Approx(o.teer).epsilon(1e-8));
  CHECK(rates.fa_spf == doctest::Approx(o.teer).epsilon(1e-8));

  CHECK(std::abs(oracle::dense_grid_concurrent(SimulationParams{}, 1e-4) - o.teer) <= 1e-3);
}

TEST_CASE("symmetric parameters give three equal rates") {
  for (double e : {0.05, 0.15, 0.3}) {
    SimulationParams p{e, e, e, 1, 1};
    auto o = oracle_concurrent_teer(p);
    auto r = tandem_at(oracle_rates(p, o.tau_asv, o.tau_cm));
    CHECK(std::abs(r.miss - o.teer) <= 1e-9);
    CHECK(std::abs(r.fa_non - o.teer) <= 1e-9);
    CHECK(std::abs(r.fa_spf - o.teer) <= 1e-9);
  }
}

TEST_CASE("oracle t-EER is strictly inside the unit interval") {
  oracle::RandomScores rs(47);
  for (int rep = 0; rep < 100; ++rep) {
    const double non = rs.uniform(0.01, 0.45);
    SimulationParams p{non, rs.uniform(non, 0.49), rs.uniform(0.01, 0.45), 1, 1};
    auto o = oracle_concurrent_teer(p);
    CHECK(o.teer > 0.0);
    CHECK(o.teer < 1.0);
  }
}

TEST_CASE("no concurrent point when spoofs are easier than nontargets") {
  SimulationParams p{0.2, 0.1, 0.1, 1, 1};
  CHECK_THROWS_AS(oracle_concurrent_teer(p), SolverError);
}
