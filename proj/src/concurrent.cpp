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

#include "teer/concurrent.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "teer/error.hpp"

namespace teer {

namespace {

double cross_residual(const TandemGrid& g, std::size_t i, std::size_t j) {
  return g.asv_fa_non()[i] * (1.0 - g.cm_miss()[j]) - g.cm_fa()[j] * g.asv_fa_spf()[i];
}

double max_rate_change(const TandemRates& a, const TandemRates& b) {
  return std::max({std::abs(a.miss - b.miss), std::abs(a.fa_non - b.fa_non),
                   std::abs(a.fa_spf - b.fa_spf)});
}

}  // namespace

double xpoint_residual(const RateCurve& asv, const RateCurve& cm, std::size_t i, std::size_t j) {
  if (i >= asv.size() || j >= cm.size()) throw InputError("operating point out of range");
  return cross_residual(TandemGrid(asv, cm), i, j);
}

ConcurrentPoint concurrent_teer(const RateCurve& asv, const RateCurve& cm,
                                SpoofPrevalence sweep_rho, unsigned threads) {
  return concurrent_from_path(asv, cm, build_teer_path(asv, cm, sweep_rho, threads));
}

ConcurrentPoint concurrent_from_path(const RateCurve& asv, const RateCurve& cm,
                                     const TeerPath& path) {
  TandemGrid grid(asv, cm);
  const auto& entries = path.entries;
  if (entries.empty()) throw InputError("empty t-EER path");

  std::vector<double> x(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k)
    x[k] = cross_residual(grid, entries[k].asv_index, entries[k].cm_index);

  auto degenerate = [&](std::size_t k) {
    return entries[k].asv_index == 0 && entries[k].cm_index == 0;
  };
  auto better = [&](std::size_t a, std::size_t b) {  // a preferred over b
    return std::abs(x[a]) < std::abs(x[b]) || (std::abs(x[a]) == std::abs(x[b]) && a < b);
  };

  // A candidate is an exact zero or the smaller-|x| side of a strict sign
  // change between consecutive entries. A run of zeros is one sign change.
  std::vector<std::size_t> candidates;
  std::size_t events = 0;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (x[k] == 0.0) {
      candidates.push_back(k);
      if (k == 0 || x[k - 1] != 0.0) ++events;
    } else if (k + 1 < entries.size() && x[k + 1] != 0.0 && (x[k] < 0.0) != (x[k + 1] < 0.0)) {
      candidates.push_back(better(k + 1, k) ? k + 1 : k);
      ++events;
    }
  }
  const bool only_degenerate =
      std::all_of(candidates.begin(), candidates.end(), degenerate);

  std::optional<std::size_t> chosen;
  for (std::size_t k : candidates) {
    if (degenerate(k) && !only_degenerate) continue;
    if (!chosen || better(k, *chosen)) chosen = k;
  }
  bool warning = false;
  if (!chosen) {
    warning = true;
    for (std::size_t k = 0; k < entries.size(); ++k) {
      if (degenerate(k) && entries.size() > 1) continue;
      if (!chosen || better(k, *chosen)) chosen = k;
    }
  }

  const std::size_t k = *chosen;
  const auto& e = entries[k];
  ConcurrentPoint p;
  p.asv_index = e.asv_index;
  p.cm_index = e.cm_index;
  p.asv_threshold = e.asv_threshold;
  p.cm_threshold = e.cm_threshold;
  p.rates = grid.at(e.asv_index, e.cm_index);
  p.teer = (p.rates.miss + p.rates.fa_non + p.rates.fa_spf) / 3.0;
  p.rate_spread = std::max({p.rates.miss, p.rates.fa_non, p.rates.fa_spf}) -
                  std::min({p.rates.miss, p.rates.fa_non, p.rates.fa_spf});
  p.xpoint_residual = x[k];
  p.sign_changes = events;
  p.warning = warning;

  p.grid_step = local_grid_step(grid, path.rho, e.asv_index, e.cm_index);
  for (std::size_t nb : {k - 1, k + 1}) {
    if (nb >= entries.size()) continue;  // k - 1 wraps at k = 0
    p.grid_step = std::max(
        p.grid_step,
        max_rate_change(p.rates, grid.at(entries[nb].asv_index, entries[nb].cm_index)));
  }
  return p;
}

IntersectionReport verify_intersection(const RateCurve& asv, const RateCurve& cm,
                                       const std::vector<SpoofPrevalence>& rhos) {
  return verify_intersection(asv, cm, concurrent_teer(asv, cm), rhos);
}

IntersectionReport verify_intersection(const RateCurve& asv, const RateCurve& cm,
                                       const ConcurrentPoint& point,
                                       const std::vector<SpoofPrevalence>& rhos) {
  IntersectionReport report;
  report.point = point;
  auto rates = tandem_rates_at(asv, cm, point.asv_index, point.cm_index);
  for (auto rho : rhos) {
    double dev = std::abs(rates.miss - tandem_fa_total(rho, rates.fa_non, rates.fa_spf));
    report.rows.push_back({rho.value(), dev});
    report.max_deviation = std::max(report.max_deviation, dev);
  }
  return report;
}

}  // namespace teer
