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

// Reporting utilities: the familiar single-system EERs seen as special cases
// of the tandem EER, and class-conditional ASV/CM score correlations.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "teer/concurrent.hpp"
#include "teer/curves.hpp"
#include "teer/score_io.hpp"
#include "teer/tandem.hpp"

namespace teer {

/// Absent fields could not be computed because a class has no trials.
struct SpecialCaseEers {
  std::optional<double> asv_tar_vs_non;
  std::optional<double> asv_tar_vs_spf;
  /// EER of target vs the rho-weighted nontarget/spoof mixture.
  std::optional<double> asv_tar_vs_mix;
  double rho = 0.0;
  double cm_bona_vs_spf = 0.0;
  std::optional<ConcurrentPoint> concurrent;
};

SpecialCaseEers special_case_eers(const AsvScoreSet& asv, const CmScoreSet& cm,
                                  SpoofPrevalence rho);
SpecialCaseEers special_case_eers(const RateCurve& asv, const RateCurve& cm, SpoofPrevalence rho);

/// EER of target vs a mixture whose false-alarm curve is
/// (1 - rho) fa_non + rho fa_spf. Absent if a class with non-zero weight is
/// missing.
std::optional<EerResult> mixture_eer(const RateCurve& asv, SpoofPrevalence rho);

/// Sample Pearson correlation; absent when either input has zero variance
/// or fewer than two samples.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

struct CorrelationEntry {
  std::optional<double> r;
  std::size_t n = 0;
  std::string reason;  // why r is absent
};

struct CorrelationReport {
  std::map<TrialClass, CorrelationEntry> per_class;
  /// Spoof rows grouped by attack id; empty when no row carries one.
  std::map<std::string, CorrelationEntry> per_attack;
};

CorrelationReport class_conditional_correlation(const PairedScoreSet& paired);

}  // namespace teer
