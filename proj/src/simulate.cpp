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

#include "teer/simulate.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <numbers>

#include "teer/error.hpp"

namespace teer {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stream ids: class * 2 + subsystem.
enum Stream : std::uint64_t {
  kTarAsv = 0,
  kTarCm = 1,
  kNonAsv = 2,
  kNonCm = 3,
  kSpfAsv = 4,
  kSpfCm = 5,
};

}  // namespace

void SimulationParams::validate() const {
  for (double e : {eer_asv_non, eer_asv_spf, eer_cm})
    if (!(e > 0.0 && e < 0.5)) throw InputError("simulation EERs must lie in (0, 0.5)");
  if (n_per_class == 0) throw InputError("n_per_class must be positive");
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InputError("normal quantile needs p in (0, 1)");
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

double gaussian_separation(double eer) {
  if (!(eer > 0.0 && eer < 0.5)) throw InputError("EER must lie in (0, 0.5)");
  return -2.0 * normal_quantile(eer);
}

double CounterNormal::uniform(std::uint64_t k) const {
  std::uint64_t h = splitmix64(seed_ ^ splitmix64(stream_ ^ splitmix64(k)));
  // 53 random bits, centred in their cell so the value is never 0 or 1.
  return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

double CounterNormal::operator()(std::uint64_t k) const { return normal_quantile(uniform(k)); }

SimulatedScores simulate_scores(const SimulationParams& p) {
  p.validate();
  const double d_non = gaussian_separation(p.eer_asv_non);
  const double d_spf = gaussian_separation(p.eer_asv_spf);
  const double d_cm = gaussian_separation(p.eer_cm);
  const std::size_t n = p.n_per_class;

  auto draw = [&](Stream s, double mean) {
    CounterNormal gen(p.seed, s);
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = mean + gen(k);
    return v;
  };

  SimulatedScores out;
  out.asv.tar = draw(kTarAsv, 0.0);
  out.asv.non = draw(kNonAsv, -d_non);
  out.asv.spf = draw(kSpfAsv, -d_spf);
  auto cm_tar = draw(kTarCm, 0.0);
  auto cm_non = draw(kNonCm, 0.0);
  out.cm.spf = draw(kSpfCm, -d_cm);

  out.cm.bona = cm_tar;
  out.cm.bona.insert(out.cm.bona.end(), cm_non.begin(), cm_non.end());

  auto& rows = out.paired.rows;
  rows.reserve(3 * n);
  for (std::size_t k = 0; k < n; ++k) rows.push_back({out.asv.tar[k], cm_tar[k], TrialClass::Target, {}});
  for (std::size_t k = 0; k < n; ++k) rows.push_back({out.asv.non[k], cm_non[k], TrialClass::Nontarget, {}});
  for (std::size_t k = 0; k < n; ++k) rows.push_back({out.asv.spf[k], out.cm.spf[k], TrialClass::Spoof, {}});
  return out;
}

SubsystemRates oracle_rates(const SimulationParams& p, double tau_asv, double tau_cm) {
  p.validate();
  const double d_non = gaussian_separation(p.eer_asv_non);
  const double d_spf = gaussian_separation(p.eer_asv_spf);
  const double d_cm = gaussian_separation(p.eer_cm);
  // P(s > tau) for s ~ N(mean, 1) is Phi(mean - tau).
  return {normal_cdf(tau_asv), normal_cdf(-d_non - tau_asv), normal_cdf(-d_spf - tau_asv),
          normal_cdf(tau_cm), normal_cdf(-d_cm - tau_cm)};
}

OracleConcurrent oracle_concurrent_teer(const SimulationParams& p) {
  p.validate();
  constexpr double kFar = 40.0;
  constexpr int kMaxIter = 200;

  // rho = 0 path: tandem miss - tandem nontarget false alarm, increasing in tau_cm.
  auto path_cm_threshold = [&](double tau_asv) {
    double lo = -kFar, hi = kFar;
    for (int it = 0; it < kMaxIter; ++it) {
      double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      auto r = oracle_rates(p, tau_asv, mid);
      double miss = 1.0 - (1.0 - r.cm_miss) * (1.0 - r.asv_miss);
      double fa = (1.0 - r.cm_miss) * r.asv_fa_non;
      (miss - fa < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  auto cross = [&](double tau_asv, double tau_cm) {
    auto r = oracle_rates(p, tau_asv, tau_cm);
    return r.asv_fa_non * (1.0 - r.cm_miss) - r.cm_fa * r.asv_fa_spf;
  };

  // Feasible ASV thresholds for rho = 0: P_fa,non >= P_miss, i.e.
  // tau_asv <= -d_non / 2. The cross residual is positive far left and
  // non-positive at the critical threshold.
  double lo = -kFar / 4.0;
  double hi = -0.5 * gaussian_separation(p.eer_asv_non);
  // With spoofs easier for the ASV than nontargets the residual stays
  // positive up to the critical threshold and no concurrent point exists.
  if (!(cross(lo, path_cm_threshold(lo)) > 0.0) || cross(hi, path_cm_threshold(hi)) > 1e-10)
    throw SolverError("oracle: no sign change of the cross-point residual");

  for (int it = 0; it < kMaxIter; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (cross(mid, path_cm_threshold(mid)) > 0.0 ? lo : hi) = mid;
  }

  OracleConcurrent out;
  out.tau_asv = 0.5 * (lo + hi);
  out.tau_cm = path_cm_threshold(out.tau_asv);
  if (!(std::abs(cross(out.tau_asv, out.tau_cm)) <= 1e-10))
    throw SolverError("oracle: bisection did not converge");
  auto r = oracle_rates(p, out.tau_asv, out.tau_cm);
  out.teer = r.asv_fa_spf * r.cm_fa;
  return out;
}

}  // namespace teer
