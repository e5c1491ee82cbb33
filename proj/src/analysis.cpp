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

#include "teer/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace teer {

std::optional<EerResult> mixture_eer(const RateCurve& asv, SpoofPrevalence rho) {
  const double r = rho.value();
  const bool has_non = asv.has(NegativeClass::Nontarget);
  const bool has_spf = asv.has(NegativeClass::Spoof);
  if (r == 0.0) {
    if (!has_non) return std::nullopt;
    return eer(asv, NegativeClass::Nontarget);
  }
  if (r == 1.0) {
    if (!has_spf) return std::nullopt;
    return eer(asv, NegativeClass::Spoof);
  }
  if (!has_non || !has_spf) return std::nullopt;
  const auto& non = asv.fa(NegativeClass::Nontarget);
  const auto& spf = asv.fa(NegativeClass::Spoof);
  std::vector<double> mixed(non.size());
  for (std::size_t k = 0; k < non.size(); ++k) mixed[k] = tandem_fa_total(rho, non[k], spf[k]);
  return nearest_equal_error(asv.miss(), mixed);
}

SpecialCaseEers special_case_eers(const AsvScoreSet& asv, const CmScoreSet& cm,
                                  SpoofPrevalence rho) {
  return special_case_eers(asv_rate_curve(asv), cm_rate_curve(cm), rho);
}

SpecialCaseEers special_case_eers(const RateCurve& asv, const RateCurve& cm, SpoofPrevalence rho) {
  SpecialCaseEers out;
  out.rho = rho.value();
  if (asv.has(NegativeClass::Nontarget))
    out.asv_tar_vs_non = eer(asv, NegativeClass::Nontarget).eer;
  if (asv.has(NegativeClass::Spoof)) out.asv_tar_vs_spf = eer(asv, NegativeClass::Spoof).eer;
  if (auto mix = mixture_eer(asv, rho)) out.asv_tar_vs_mix = mix->eer;
  out.cm_bona_vs_spf = eer(cm, NegativeClass::Spoof).eer;
  if (asv.has(NegativeClass::Nontarget) && asv.has(NegativeClass::Spoof))
    out.concurrent = concurrent_teer(asv, cm);
  return out;
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return std::nullopt;
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double dx = x[k] - mx, dy = y[k] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

namespace {

CorrelationEntry correlate(const std::vector<double>& asv, const std::vector<double>& cm) {
  CorrelationEntry e;
  e.n = asv.size();
  if (e.n < 2) {
    e.reason = "fewer than 2 trials";
    return e;
  }
  e.r = pearson(asv, cm);
  if (!e.r) e.reason = "zero score variance";
  return e;
}

}  // namespace

CorrelationReport class_conditional_correlation(const PairedScoreSet& paired) {
  std::map<TrialClass, std::pair<std::vector<double>, std::vector<double>>> by_class;
  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> by_attack;
  for (const auto& row : paired.rows) {
    auto& c = by_class[row.cls];
    c.first.push_back(row.asv_score);
    c.second.push_back(row.cm_score);
    if (row.attack_id) {
      auto& a = by_attack[*row.attack_id];
      a.first.push_back(row.asv_score);
      a.second.push_back(row.cm_score);
    }
  }
  CorrelationReport report;
  for (const auto& [cls, xy] : by_class) report.per_class[cls] = correlate(xy.first, xy.second);
  for (const auto& [id, xy] : by_attack) report.per_attack[id] = correlate(xy.first, xy.second);
  return report;
}

}  // namespace teer
