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

// The concurrent t-EER: the operating point shared by the t-EER paths of
// every spoof prevalence, where tandem miss, nontarget false-alarm and spoof
// false-alarm rates coincide. It satisfies
//
//   P_fa,non^asv (1 - P_miss^cm) = P_fa^cm P_fa,spf^asv
//
// and its value is P_fa,spf^asv * P_fa^cm.

#include <cstddef>
#include <string>
#include <vector>

#include "teer/curves.hpp"
#include "teer/path.hpp"
#include "teer/tandem.hpp"

namespace teer {

struct ConcurrentPoint {
  std::size_t asv_index = 0;
  std::size_t cm_index = 0;
  double asv_threshold = 0.0;  // -inf at index 0
  double cm_threshold = 0.0;
  double teer = 0.0;  // mean of the three tandem rates
  double xpoint_residual = 0.0;
  double rate_spread = 0.0;  // max - min of the three tandem rates
  /// Discretisation unit at the point: largest change of a tandem rate to a
  /// neighbouring operating point or to a neighbouring path entry.
  double grid_step = 0.0;
  TandemRates rates;
  /// Distinct sign changes of the cross-point residual along the path.
  std::size_t sign_changes = 0;
  /// Set when no sign change exists; the point is then the path entry with
  /// the smallest |xpoint_residual|.
  bool warning = false;
};

/// P_fa,non^asv(i) (1 - P_miss^cm(j)) - P_fa^cm(j) P_fa,spf^asv(i).
double xpoint_residual(const RateCurve& asv, const RateCurve& cm, std::size_t i, std::size_t j);

/// Locates the concurrent point along the t-EER path of `sweep_rho`.
ConcurrentPoint concurrent_teer(const RateCurve& asv, const RateCurve& cm,
                                SpoofPrevalence sweep_rho = SpoofPrevalence{0.0},
                                unsigned threads = 1);

/// Same, on an already built path of the given curves.
ConcurrentPoint concurrent_from_path(const RateCurve& asv, const RateCurve& cm,
                                     const TeerPath& path);

struct IntersectionRow {
  double rho = 0.0;
  double deviation = 0.0;  // |P_miss^tdm - P_fa,rho^tdm| at the concurrent point
};

struct IntersectionReport {
  ConcurrentPoint point;
  std::vector<IntersectionRow> rows;
  double max_deviation = 0.0;
};

/// How far the concurrent point is from lying on each requested path.
IntersectionReport verify_intersection(const RateCurve& asv, const RateCurve& cm,
                                       const std::vector<SpoofPrevalence>& rhos);
IntersectionReport verify_intersection(const RateCurve& asv, const RateCurve& cm,
                                       const ConcurrentPoint& point,
                                       const std::vector<SpoofPrevalence>& rhos);

}  // namespace teer
