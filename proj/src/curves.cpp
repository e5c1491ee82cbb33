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

#include "teer/curves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "teer/error.hpp"
#include "teer/format.hpp"

namespace teer {

namespace {

// counts[k] = number of sorted scores <= thresholds[k-1], counts[0] = 0.
std::vector<std::size_t> cumulative_counts(std::vector<double> scores,
                                           const std::vector<double>& thresholds) {
  std::sort(scores.begin(), scores.end());
  std::vector<std::size_t> counts(thresholds.size() + 1, 0);
  std::size_t p = 0;
  for (std::size_t k = 0; k < thresholds.size(); ++k) {
    while (p < scores.size() && scores[p] <= thresholds[k]) ++p;
    counts[k + 1] = p;
  }
  return counts;
}

}  // namespace

std::string_view to_string(NegativeClass c) {
  return c == NegativeClass::Nontarget ? "nontarget" : "spoof";
}

double RateCurve::threshold_at(std::size_t k) const {
  if (k == 0) return -std::numeric_limits<double>::infinity();
  return thresholds_.at(k - 1);
}

std::size_t RateCurve::operating_index(double tau) const {
  if (std::isnan(tau)) throw InputError("threshold is NaN");
  return static_cast<std::size_t>(
      std::upper_bound(thresholds_.begin(), thresholds_.end(), tau) - thresholds_.begin());
}

RateCurve build_rate_curve(std::span<const double> pos,
                           const std::map<NegativeClass, std::vector<double>>& neg_by_class) {
  if (pos.empty()) throw InputError("rate curve: no positive scores");
  bool any_negative = false;
  for (const auto& [cls, scores] : neg_by_class) any_negative |= !scores.empty();
  if (!any_negative) throw InputError("rate curve: no negative scores");

  RateCurve curve;
  auto& t = curve.thresholds_;
  t.assign(pos.begin(), pos.end());
  for (const auto& [cls, scores] : neg_by_class) t.insert(t.end(), scores.begin(), scores.end());
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());

  curve.n_pos_ = pos.size();
  auto pos_counts = cumulative_counts({pos.begin(), pos.end()}, t);
  curve.miss_.resize(pos_counts.size());
  for (std::size_t k = 0; k < pos_counts.size(); ++k)
    curve.miss_[k] = static_cast<double>(pos_counts[k]) / static_cast<double>(pos.size());

  for (const auto& [cls, scores] : neg_by_class) {
    if (scores.empty()) continue;
    auto counts = cumulative_counts(scores, t);
    auto& fa = curve.fa_by_class_[cls];
    fa.resize(counts.size());
    double n = static_cast<double>(scores.size());
    for (std::size_t k = 0; k < counts.size(); ++k)
      fa[k] = static_cast<double>(scores.size() - counts[k]) / n;
    curve.n_neg_[cls] = scores.size();
  }
  return curve;
}

RateCurve asv_rate_curve(const AsvScoreSet& scores) {
  return build_rate_curve(scores.tar, {{NegativeClass::Nontarget, scores.non},
                                       {NegativeClass::Spoof, scores.spf}});
}

RateCurve cm_rate_curve(const CmScoreSet& scores) {
  return build_rate_curve(scores.bona, {{NegativeClass::Spoof, scores.spf}});
}

EerResult nearest_equal_error(std::span<const double> miss, std::span<const double> fa) {
  EerResult best;
  double best_gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < miss.size() && k < fa.size(); ++k) {
    double gap = std::abs(miss[k] - fa[k]);
    if (gap < best_gap) {
      best_gap = gap;
      best.threshold_index = k;
      best.miss_at = miss[k];
      best.fa_at = fa[k];
    }
  }
  best.eer = 0.5 * (best.miss_at + best.fa_at);
  return best;
}

EerResult eer(const RateCurve& curve, NegativeClass fa_class) {
  return nearest_equal_error(curve.miss(), curve.fa(fa_class));
}

double weighted_error_min(const RateCurve& curve, NegativeClass fa_class, double prior) {
  if (!(prior >= 0.0 && prior <= 1.0)) throw InputError("prior must lie in [0, 1]");
  const auto& miss = curve.miss();
  const auto& fa = curve.fa(fa_class);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < miss.size(); ++k)
    best = std::min(best, prior * miss[k] + (1.0 - prior) * fa[k]);
  return best;
}

std::string curve_to_csv(const RateCurve& curve) {
  std::string out = "threshold,miss";
  for (const auto& [cls, fa] : curve.fa_by_class()) {
    out += ",fa_";
    out += to_string(cls);
  }
  out += '\n';
  for (std::size_t k = 0; k < curve.size(); ++k) {
    out += format_exact(curve.threshold_at(k));
    out += ',';
    out += format_sig6(curve.miss()[k]);
    for (const auto& [cls, fa] : curve.fa_by_class()) {
      out += ',';
      out += format_sig6(fa[k]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace teer
