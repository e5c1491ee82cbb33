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

// t-EER paths: for a fixed spoof prevalence rho, the threshold pairs at
// which the tandem miss rate equals the rho-weighted tandem false-alarm rate.
//
// The path is stored as one CM operating point per feasible ASV operating
// point, so memory is linear in the number of scores. For a fixed ASV point
// the residual (miss - fa) is non-decreasing in the CM point, which makes the
// inner search a bisection.

#include <cstddef>
#include <string>
#include <vector>

#include "teer/curves.hpp"
#include "teer/tandem.hpp"

namespace teer {

struct PathEntry {
  std::size_t asv_index = 0;
  std::size_t cm_index = 0;
  double asv_threshold = 0.0;  // -inf at index 0
  double cm_threshold = 0.0;
  double teer = 0.0;      // (miss + fa_rho) / 2
  double residual = 0.0;  // miss - fa_rho
  /// Number of operating points along the searched axis sharing this
  /// residual (1 unless the residual is flat there).
  std::size_t plateau = 1;
};

struct TeerPath {
  SpoofPrevalence rho{0.0};
  std::vector<PathEntry> entries;
  std::size_t asv_critical_index = 0;  // largest feasible ASV operating point
  std::size_t cm_critical_index = 0;   // largest feasible CM operating point
};

/// (1 - rho) P_fa,non(i) + rho P_fa,spf(i) >= P_miss(i) on the ASV curve.
bool asv_feasible(const RateCurve& asv, SpoofPrevalence rho, std::size_t i);
/// 1 - rho + rho P_fa(j) >= (2 - rho) P_miss(j) on the CM curve.
bool cm_feasible(const RateCurve& cm, SpoofPrevalence rho, std::size_t j);

/// Largest feasible index. Feasible indices form a prefix that always
/// contains 0.
std::size_t asv_critical_index(const RateCurve& asv, SpoofPrevalence rho);
std::size_t cm_critical_index(const RateCurve& cm, SpoofPrevalence rho);

/// Path point for ASV operating point i: the CM point minimising |residual|,
/// smallest index on ties.
PathEntry teer_at_asv_index(const TandemGrid& grid, SpoofPrevalence rho, std::size_t i);
/// Transposed search: the ASV point minimising |residual| for CM point j.
PathEntry teer_at_cm_index(const TandemGrid& grid, SpoofPrevalence rho, std::size_t j);

/// One entry per feasible ASV operating point, in ascending ASV order.
/// `threads` = 0 picks the hardware concurrency; the result does not depend
/// on it.
TeerPath build_teer_path(const RateCurve& asv, const RateCurve& cm, SpoofPrevalence rho,
                         unsigned threads = 1);

struct PathPoint {
  double asv_threshold = 0.0;
  double teer = 0.0;
};

/// (ASV threshold, t-EER) series for plotting.
std::vector<PathPoint> teer_along_path(const TeerPath& path);

/// Largest change of any tandem rate (miss, fa_non, fa_spf, fa_rho) when
/// moving one operating point along either axis from (i, j).
double local_grid_step(const TandemGrid& grid, SpoofPrevalence rho, std::size_t i,
                       std::size_t j);

/// Header `rho,asv_threshold,cm_threshold,teer,residual`.
std::string path_csv_header();
/// Rows for `path` without the header. Thresholds are written exactly, rates
/// with six significant digits.
std::string path_csv_rows(const TeerPath& path);

}  // namespace teer
