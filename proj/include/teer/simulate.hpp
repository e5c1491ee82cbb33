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

#pragma once

// Synthetic tandem scores from three bivariate Gaussians with diagonal unit
// covariance, one per trial class, parameterised by the EER of each
// two-class problem:
//
//   class      ASV mean      CM mean
//   target     0             0
//   nontarget  -d(eer_asv_non)  0
//   spoof      -d(eer_asv_spf)  -d(eer_cm)
//
// where d(e) = -2 Phi^-1(e) is the mean separation giving EER e.
//
// Also provides closed-form rates of this model, used as test oracles.

#include <cstdint>

#include "teer/score_io.hpp"

namespace teer {

struct SimulationParams {
  double eer_asv_non = 0.08;
  double eer_asv_spf = 0.35;
  double eer_cm = 0.10;
  std::size_t n_per_class = 10000;
  std::uint64_t seed = 1;

  /// Throws InputError unless every EER is in (0, 0.5) and n_per_class > 0.
  void validate() const;
};

/// Standard normal CDF.
double normal_cdf(double x);
/// Standard normal quantile; p in (0, 1).
double normal_quantile(double p);

/// Mean separation of two unit-variance Gaussians with EER `eer` in (0, 0.5).
double gaussian_separation(double eer);

/// Deterministic standard-normal stream: value k of stream s is a pure
/// function of (seed, s, k), identical on every platform.
class CounterNormal {
 public:
  CounterNormal(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}
  /// Uniform in (0, 1).
  double uniform(std::uint64_t k) const;
  double operator()(std::uint64_t k) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
};

struct SimulatedScores {
  AsvScoreSet asv;
  CmScoreSet cm;  // bona = target CM scores then nontarget CM scores
  PairedScoreSet paired;
};

SimulatedScores simulate_scores(const SimulationParams& p);

struct SubsystemRates {
  double asv_miss = 0.0;
  double asv_fa_non = 0.0;
  double asv_fa_spf = 0.0;
  double cm_miss = 0.0;
  double cm_fa = 0.0;
};

/// Exact rates of the simulated model at (tau_asv, tau_cm); accept iff s > tau.
SubsystemRates oracle_rates(const SimulationParams& p, double tau_asv, double tau_cm);

struct OracleConcurrent {
  double tau_asv = 0.0;
  double tau_cm = 0.0;
  double teer = 0.0;
};

/// Concurrent point of the exact model: bisection on tau_asv over the
/// feasible region of the rho = 0 path, inner bisection on tau_cm for the
/// path condition. Throws SolverError if it fails to converge.
OracleConcurrent oracle_concurrent_teer(const SimulationParams& p);

}  // namespace teer
