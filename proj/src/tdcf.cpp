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

#include "teer/tdcf.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "teer/error.hpp"

namespace teer {

namespace {

struct LatticePoint {
  std::int64_t miss;  // CM miss count
  std::int64_t fa;    // CM false-alarm count
  std::size_t j;
};

// (b - a) x (c - a), exact in 64-bit integers for realistic trial counts.
std::int64_t cross(const LatticePoint& a, const LatticePoint& b, const LatticePoint& c) {
  return (b.miss - a.miss) * (c.fa - a.fa) - (b.fa - a.fa) * (c.miss - a.miss);
}

struct CmCandidates {
  /// Lower convex hull of the CM ROC points (P_miss ascending, so also j
  /// ascending), collinear points kept.
  std::vector<std::size_t> hull;
  /// Minimisers when the P_fa coefficient is zero: j = 0 and the first j
  /// with the largest miss count.
  std::vector<std::size_t> extra;
};

// CM operating points that can minimise B * P_miss + C * P_fa for some
// B in R, C >= 0, including every point tied with a minimiser. For C > 0 the
// minimisers lie on the lower hull.
CmCandidates cm_candidates(const RateCurve& cm) {
  const auto& miss = cm.miss();
  const auto& fa = cm.fa(NegativeClass::Spoof);
  const auto n_pos = static_cast<double>(cm.positive_count());
  const auto n_neg = static_cast<double>(cm.negative_count(NegativeClass::Spoof));

  // Points arrive sorted by miss ascending and, within equal miss, by fa
  // descending (fa is non-increasing in j).
  std::vector<LatticePoint> hull;
  for (std::size_t j = 0; j < cm.size(); ++j) {
    LatticePoint p{std::llround(miss[j] * n_pos), std::llround(fa[j] * n_neg), j};
    if (!hull.empty() && hull.back().miss == p.miss) hull.pop_back();  // same miss, higher fa
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) < 0) hull.pop_back();
    hull.push_back(p);
  }

  CmCandidates out;
  for (const auto& p : hull) out.hull.push_back(p.j);
  out.extra.push_back(0);
  out.extra.push_back(static_cast<std::size_t>(
      std::lower_bound(miss.begin(), miss.end(), miss.back()) - miss.begin()));
  return out;
}

}  // namespace

void TdcfParams::validate() const {
  for (double c : {c_miss, c_fa_non, c_fa_spf})
    if (!(c > 0.0 && std::isfinite(c))) throw InputError("t-DCF costs must be positive");
}

double tdcf(const TdcfParams& params, const TandemRates& r) {
  const auto& p = params.asserted;
  return params.c_miss * p.tar() * r.miss + params.c_fa_non * p.non() * r.fa_non +
         params.c_fa_spf * p.spoof() * r.fa_spf;
}

TdcfMinimum min_tdcf(const RateCurve& asv, const RateCurve& cm, const TdcfParams& params,
                     std::optional<std::size_t> fixed_asv_index) {
  params.validate();
  TandemGrid grid(asv, cm);

  // For a fixed ASV point the t-DCF is affine in (P_miss^cm, P_fa^cm) with a
  // non-negative P_fa^cm coefficient, so its minimum lies on the CM lower
  // hull, along which it is convex. Bisect on the hull, then scan every hull
  // point within rounding distance of the minimum so ties resolve exactly.
  const auto cand = cm_candidates(cm);
  const auto& hull = cand.hull;
  const double scale = params.c_miss + params.c_fa_non + params.c_fa_spf;

  std::size_t lo = 0, hi = grid.asv_size();
  if (fixed_asv_index) {
    if (*fixed_asv_index >= grid.asv_size()) throw InputError("ASV operating point out of range");
    lo = *fixed_asv_index;
    hi = lo + 1;
  }

  TdcfMinimum best{std::numeric_limits<double>::infinity(), lo, 0};
  for (std::size_t i = lo; i < hi; ++i) {
    auto cost = [&](std::size_t j) { return tdcf(params, grid.at(i, j)); };
    auto at = [&](std::size_t k) { return cost(hull[k]); };

    std::size_t a = 0, b = hull.size() - 1;
    while (a < b) {
      std::size_t mid = a + (b - a) / 2;
      if (at(mid + 1) < at(mid))
        a = mid + 1;
      else
        b = mid;
    }
    const double centre = at(a);
    const double slack = 1e-12 * scale;
    std::size_t left = a, right = a;
    while (left > 0 && at(left - 1) <= centre + slack) --left;
    while (right + 1 < hull.size() && at(right + 1) <= centre + slack) ++right;

    // Candidates in ascending j: extras interleave with the hull window.
    std::size_t best_j = hull[left];
    double best_v = at(left);
    for (std::size_t k = left + 1; k <= right; ++k) {
      double v = at(k);
      if (v < best_v) best_v = v, best_j = hull[k];
    }
    for (std::size_t j : cand.extra) {
      double v = cost(j);
      if (v < best_v || (v == best_v && j < best_j)) best_v = v, best_j = j;
    }
    if (best_v < best.value) best = {best_v, i, best_j};
  }
  return best;
}

TdcfBounds tdcf_bounds_at_concurrent(const TdcfParams& params, double p_e_cross) {
  params.validate();
  if (!(p_e_cross >= 0.0 && p_e_cross <= 1.0))
    throw InputError("concurrent t-EER must lie in [0, 1]");
  const auto& p = params.asserted;
  TdcfBounds b;
  b.lo = std::min({params.c_miss, params.c_fa_non, params.c_fa_spf}) * p_e_cross;
  b.hi = std::max({params.c_miss, params.c_fa_non, params.c_fa_spf}) * p_e_cross;
  b.value = p_e_cross *
            (params.c_miss * p.tar() + params.c_fa_non * p.non() + params.c_fa_spf * p.spoof());
  return b;
}

}  // namespace teer
