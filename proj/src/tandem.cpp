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

#include "teer/tandem.hpp"

#include <algorithm>
#include <cmath>

#include "teer/error.hpp"

namespace teer {

TandemPriors::TandemPriors(double tar, double non, double spoof)
    : tar_(tar), non_(non), spoof_(spoof) {
  if (!(tar >= 0.0 && non >= 0.0 && spoof >= 0.0))
    throw InputError("tandem priors must be non-negative");
  if (!(std::abs(tar + non + spoof - 1.0) <= 1e-12))
    throw InputError("tandem priors must sum to 1");
}

SpoofPrevalence::SpoofPrevalence(double rho) : rho_(rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw InputError("spoof prevalence must lie in [0, 1]");
}

SpoofPrevalence rho_from_priors(const TandemPriors& p) {
  double negatives = p.non() + p.spoof();
  if (!(negatives > 0.0))
    throw InputError("spoof prevalence undefined: no nontarget or spoof prior mass");
  return SpoofPrevalence(std::min(1.0, p.spoof() / negatives));
}

// Every formula below is a composition of monotone floating-point operations,
// so tandem rates stay exactly monotone in each subsystem rate. The path
// search relies on that.

double tandem_miss(double p_miss_cm, double p_miss_asv) {
  return 1.0 - (1.0 - p_miss_cm) * (1.0 - p_miss_asv);
}

double tandem_fa_non(double p_miss_cm, double p_fa_non_asv) {
  return (1.0 - p_miss_cm) * p_fa_non_asv;
}

double tandem_fa_spf(double p_fa_cm, double p_fa_spf_asv) { return p_fa_cm * p_fa_spf_asv; }

double tandem_fa_total(SpoofPrevalence rho, double fa_non, double fa_spf) {
  return (1.0 - rho.value()) * fa_non + rho.value() * fa_spf;
}

double tandem_total_error(const TandemPriors& p, const TandemRates& r) {
  return p.tar() * r.miss + p.non() * r.fa_non + p.spoof() * r.fa_spf;
}

TandemGrid::TandemGrid(const RateCurve& asv, const RateCurve& cm) : asv_(&asv), cm_(&cm) {
  if (!asv.has(NegativeClass::Nontarget) || !asv.has(NegativeClass::Spoof))
    throw InputError("ASV scores need both nontarget and spoof trials");
  if (!cm.has(NegativeClass::Spoof)) throw InputError("CM scores need spoof trials");
  asv_miss_ = asv.miss();
  asv_fa_non_ = asv.fa(NegativeClass::Nontarget);
  asv_fa_spf_ = asv.fa(NegativeClass::Spoof);
  cm_miss_ = cm.miss();
  cm_fa_ = cm.fa(NegativeClass::Spoof);
}

TandemRates tandem_rates_at(const RateCurve& asv, const RateCurve& cm, std::size_t i,
                            std::size_t j) {
  if (i >= asv.size() || j >= cm.size()) throw InputError("operating point out of range");
  return TandemGrid(asv, cm).at(i, j);
}

}  // namespace teer
