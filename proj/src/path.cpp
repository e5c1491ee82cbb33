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

#include "teer/path.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "teer/error.hpp"
#include "teer/format.hpp"

namespace teer {

namespace {

struct NearestZero {
  std::size_t index = 0;
  std::size_t plateau = 1;
};

// For a non-decreasing sequence r(0..n-1), the index minimising |r| with the
// smallest index on ties, plus the width of its run of equal values.
template <typename Residual>
NearestZero nearest_zero(std::size_t n, Residual r) {
  auto first_where = [&](std::size_t lo, std::size_t hi, auto pred) {
    // first k in [lo, hi) with pred(r(k)), hi if none
    while (lo < hi) {
      std::size_t mid = lo + (hi - lo) / 2;
      if (pred(r(mid)))
        hi = mid;
      else
        lo = mid + 1;
    }
    return lo;
  };

  std::size_t k = first_where(0, n, [](double v) { return v >= 0.0; });
  double value;
  std::size_t start;
  if (k == 0) {
    start = 0;
    value = r(0);
  } else if (k < n && std::abs(r(k)) < std::abs(r(k - 1))) {
    start = k;
    value = r(k);
  } else {
    value = r(k - 1);
    start = first_where(0, k - 1, [value](double v) { return v >= value; });
  }
  std::size_t end = first_where(start, n, [value](double v) { return v > value; });
  return {start, end - start};
}

PathEntry make_entry(const TandemGrid& grid, SpoofPrevalence rho, std::size_t i,
                     std::size_t j, std::size_t plateau) {
  auto rates = grid.at(i, j);
  double fa = tandem_fa_total(rho, rates.fa_non, rates.fa_spf);
  PathEntry e;
  e.asv_index = i;
  e.cm_index = j;
  e.asv_threshold = grid.asv().threshold_at(i);
  e.cm_threshold = grid.cm().threshold_at(j);
  e.teer = 0.5 * (rates.miss + fa);
  e.residual = rates.miss - fa;
  e.plateau = plateau;
  return e;
}

}  // namespace

bool asv_feasible(const RateCurve& asv, SpoofPrevalence rho, std::size_t i) {
  double fa = tandem_fa_total(rho, asv.fa(NegativeClass::Nontarget).at(i),
                              asv.fa(NegativeClass::Spoof).at(i));
  return fa >= asv.miss().at(i);
}

bool cm_feasible(const RateCurve& cm, SpoofPrevalence rho, std::size_t j) {
  const double r = rho.value();
  return 1.0 - r + r * cm.fa(NegativeClass::Spoof).at(j) >= (2.0 - r) * cm.miss().at(j);
}

std::size_t asv_critical_index(const RateCurve& asv, SpoofPrevalence rho) {
  std::size_t k = 0;
  while (k + 1 < asv.size() && asv_feasible(asv, rho, k + 1)) ++k;
  return k;
}

std::size_t cm_critical_index(const RateCurve& cm, SpoofPrevalence rho) {
  std::size_t k = 0;
  while (k + 1 < cm.size() && cm_feasible(cm, rho, k + 1)) ++k;
  return k;
}

PathEntry teer_at_asv_index(const TandemGrid& grid, SpoofPrevalence rho, std::size_t i) {
  if (i >= grid.asv_size()) throw InputError("ASV operating point out of range");
  auto nz = nearest_zero(grid.cm_size(), [&](std::size_t j) { return grid.residual(rho, i, j); });
  return make_entry(grid, rho, i, nz.index, nz.plateau);
}

PathEntry teer_at_cm_index(const TandemGrid& grid, SpoofPrevalence rho, std::size_t j) {
  if (j >= grid.cm_size()) throw InputError("CM operating point out of range");
  auto nz = nearest_zero(grid.asv_size(), [&](std::size_t i) { return grid.residual(rho, i, j); });
  return make_entry(grid, rho, nz.index, j, nz.plateau);
}

TeerPath build_teer_path(const RateCurve& asv, const RateCurve& cm, SpoofPrevalence rho,
                         unsigned threads) {
  TandemGrid grid(asv, cm);
  TeerPath path;
  path.rho = rho;
  path.asv_critical_index = asv_critical_index(asv, rho);
  path.cm_critical_index = cm_critical_index(cm, rho);

  const std::size_t n = path.asv_critical_index + 1;
  path.entries.resize(n);
  auto fill = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) path.entries[i] = teer_at_asv_index(grid, rho, i);
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, (n + 1023) / 1024));
  if (threads <= 1) {
    fill(0, n);
  } else {
    std::vector<std::jthread> workers;
    const std::size_t stripe = (n + threads - 1) / threads;
    for (std::size_t lo = 0; lo < n; lo += stripe)
      workers.emplace_back(fill, lo, std::min(n, lo + stripe));
  }
  return path;
}

std::vector<PathPoint> teer_along_path(const TeerPath& path) {
  std::vector<PathPoint> out;
  out.reserve(path.entries.size());
  for (const auto& e : path.entries) out.push_back({e.asv_threshold, e.teer});
  return out;
}

double local_grid_step(const TandemGrid& grid, SpoofPrevalence rho, std::size_t i,
                       std::size_t j) {
  auto here = grid.at(i, j);
  double step = 0.0;
  auto compare = [&](std::size_t a, std::size_t b) {
    auto there = grid.at(a, b);
    step = std::max({step, std::abs(there.miss - here.miss), std::abs(there.fa_non - here.fa_non),
                     std::abs(there.fa_spf - here.fa_spf),
                     std::abs(tandem_fa_total(rho, there.fa_non, there.fa_spf) -
                              tandem_fa_total(rho, here.fa_non, here.fa_spf))});
  };
  if (i > 0) compare(i - 1, j);
  if (i + 1 < grid.asv_size()) compare(i + 1, j);
  if (j > 0) compare(i, j - 1);
  if (j + 1 < grid.cm_size()) compare(i, j + 1);
  return step;
}

std::string path_csv_header() { return "rho,asv_threshold,cm_threshold,teer,residual\n"; }

std::string path_csv_rows(const TeerPath& path) {
  std::string out;
  const std::string rho = format_sig6(path.rho.value());
  for (const auto& e : path.entries) {
    out += rho;
    out += ',';
    out += format_exact(e.asv_threshold);
    out += ',';
    out += format_exact(e.cm_threshold);
    out += ',';
    out += format_sig6(e.teer);
    out += ',';
    out += format_sig6(e.residual);
    out += '\n';
  }
  return out;
}

}  // namespace teer
