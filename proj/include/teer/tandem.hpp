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

// Error rates of an ASV and a CM combined by the AND rule: a trial is
// accepted only if both subsystems accept it. ASV and CM scores are assumed
// independent given the trial class, so every tandem rate is a product of
// subsystem rates.

#include <cstddef>
#include <span>

#include "teer/curves.hpp"

namespace teer {

/// Database class priors of the three tandem classes.
class TandemPriors {
 public:
  /// Throws InputError unless all are >= 0 and they sum to 1 (within 1e-12).
  TandemPriors(double tar, double non, double spoof);

  double tar() const noexcept { return tar_; }
  double non() const noexcept { return non_; }
  double spoof() const noexcept { return spoof_; }

 private:
  double tar_, non_, spoof_;
};

/// Spoof prevalence: the share of spoofing attacks among negative trials,
/// rho = pi_spoof / (pi_non + pi_spoof).
class SpoofPrevalence {
 public:
  /// Throws InputError unless 0 <= rho <= 1.
  explicit SpoofPrevalence(double rho);
  double value() const noexcept { return rho_; }

 private:
  double rho_;
};

struct TandemRates {
  double miss = 0.0;
  double fa_non = 0.0;
  double fa_spf = 0.0;
};

/// Throws InputError when pi_non = pi_spoof = 0.
SpoofPrevalence rho_from_priors(const TandemPriors& p);

/// 1 - (1 - p_miss_cm)(1 - p_miss_asv).
double tandem_miss(double p_miss_cm, double p_miss_asv);
/// (1 - p_miss_cm) * p_fa_non_asv: CM passes the bona fide trial, ASV accepts it.
double tandem_fa_non(double p_miss_cm, double p_fa_non_asv);
/// p_fa_cm * p_fa_spf_asv.
double tandem_fa_spf(double p_fa_cm, double p_fa_spf_asv);
/// (1 - rho) fa_non + rho fa_spf.
double tandem_fa_total(SpoofPrevalence rho, double fa_non, double fa_spf);

/// pi_tar miss + pi_non fa_non + pi_spoof fa_spf.
double tandem_total_error(const TandemPriors& p, const TandemRates& r);

/// Read-only view of an ASV/CM curve pair for repeated evaluation of tandem
/// rates over operating-point pairs. Both curves must outlive the grid.
class TandemGrid {
 public:
  /// Throws InputError unless the ASV curve has Nontarget and Spoof false
  /// alarms and the CM curve has Spoof false alarms.
  TandemGrid(const RateCurve& asv, const RateCurve& cm);

  const RateCurve& asv() const noexcept { return *asv_; }
  const RateCurve& cm() const noexcept { return *cm_; }
  std::size_t asv_size() const noexcept { return asv_miss_.size(); }
  std::size_t cm_size() const noexcept { return cm_miss_.size(); }

  TandemRates at(std::size_t i, std::size_t j) const noexcept {
    const double cm_miss = cm_miss_[j];
    return {tandem_miss(cm_miss, asv_miss_[i]), tandem_fa_non(cm_miss, asv_fa_non_[i]),
            tandem_fa_spf(cm_fa_[j], asv_fa_spf_[i])};
  }

  /// Tandem miss minus the rho-weighted tandem false-alarm rate.
  double residual(SpoofPrevalence rho, std::size_t i, std::size_t j) const noexcept {
    auto r = at(i, j);
    return r.miss - tandem_fa_total(rho, r.fa_non, r.fa_spf);
  }

  std::span<const double> asv_miss() const noexcept { return asv_miss_; }
  std::span<const double> asv_fa_non() const noexcept { return asv_fa_non_; }
  std::span<const double> asv_fa_spf() const noexcept { return asv_fa_spf_; }
  std::span<const double> cm_miss() const noexcept { return cm_miss_; }
  std::span<const double> cm_fa() const noexcept { return cm_fa_; }

 private:
  const RateCurve* asv_;
  const RateCurve* cm_;
  std::span<const double> asv_miss_, asv_fa_non_, asv_fa_spf_, cm_miss_, cm_fa_;
};

/// Tandem rates at ASV operating point i and CM operating point j. The ASV
/// curve needs both Nontarget and Spoof false-alarm rates, the CM curve Spoof.
TandemRates tandem_rates_at(const RateCurve& asv, const RateCurve& cm, std::size_t i,
                            std::size_t j);

}  // namespace teer
