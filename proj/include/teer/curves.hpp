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

// Empirical miss / false-alarm step functions of one detector.
//
// Decision rule: accept iff score > threshold. Operating point k of a curve
// built from U distinct scores t[0] < ... < t[U-1] puts the threshold at
// t[k-1] (so a score equal to the threshold is rejected); k = 0 is the
// threshold below every score (accept all), k = U rejects all.

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "teer/score_io.hpp"

namespace teer {

/// Negative classes a curve can report false alarms for. A CM curve only
/// has Spoof; an ASV curve has Nontarget and/or Spoof.
enum class NegativeClass { Nontarget, Spoof };

std::string_view to_string(NegativeClass c);

class RateCurve {
 public:
  /// Distinct score values, ascending (length U).
  const std::vector<double>& thresholds() const noexcept { return thresholds_; }
  /// Miss rate per operating point (length U+1), non-decreasing.
  const std::vector<double>& miss() const noexcept { return miss_; }
  /// False-alarm rate per operating point for class `c` (length U+1),
  /// non-increasing. Throws std::out_of_range if the class is absent.
  const std::vector<double>& fa(NegativeClass c) const { return fa_by_class_.at(c); }
  bool has(NegativeClass c) const noexcept { return fa_by_class_.count(c) != 0; }
  const std::map<NegativeClass, std::vector<double>>& fa_by_class() const noexcept {
    return fa_by_class_;
  }

  std::size_t size() const noexcept { return miss_.size(); }
  std::size_t last() const noexcept { return miss_.size() - 1; }

  /// Threshold of operating point k; -infinity for k = 0.
  double threshold_at(std::size_t k) const;
  /// Operating point equivalent to threshold `tau`: the number of distinct
  /// scores <= tau. Inverse of threshold_at on score values.
  std::size_t operating_index(double tau) const;

  std::size_t positive_count() const noexcept { return n_pos_; }
  std::size_t negative_count(NegativeClass c) const { return n_neg_.at(c); }

 private:
  friend RateCurve build_rate_curve(std::span<const double>,
                                    const std::map<NegativeClass, std::vector<double>>&);
  std::vector<double> thresholds_;
  std::vector<double> miss_;
  std::map<NegativeClass, std::vector<double>> fa_by_class_;
  std::size_t n_pos_ = 0;
  std::map<NegativeClass, std::size_t> n_neg_;
};

/// Builds the exact (count-based) curve. Empty negative classes are left out
/// of the curve. Throws InputError if `pos` is empty or every negative class
/// is empty.
RateCurve build_rate_curve(std::span<const double> pos,
                           const std::map<NegativeClass, std::vector<double>>& neg_by_class);

/// ASV curve: target vs {nontarget, spoof}.
RateCurve asv_rate_curve(const AsvScoreSet& scores);
/// CM curve: pooled bona fide vs spoof.
RateCurve cm_rate_curve(const CmScoreSet& scores);

struct EerResult {
  double eer = 0.0;
  std::size_t threshold_index = 0;
  double miss_at = 0.0;
  double fa_at = 0.0;
};

/// Nearest-neighbour EER over the operating points of two rate sequences of
/// equal length: the point minimising |miss - fa| (smallest index on ties),
/// reported as the midpoint of the two rates.
EerResult nearest_equal_error(std::span<const double> miss, std::span<const double> fa);

EerResult eer(const RateCurve& curve, NegativeClass fa_class);

/// min over operating points of prior * miss + (1 - prior) * fa.
double weighted_error_min(const RateCurve& curve, NegativeClass fa_class, double prior);

/// CSV dump: header `threshold,miss,fa_<class>...`, one row per operating
/// point. Thresholds are written exactly, rates with six significant digits.
std::string curve_to_csv(const RateCurve& curve);

}  // namespace teer
