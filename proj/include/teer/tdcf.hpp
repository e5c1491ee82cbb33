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

// Tandem detection cost function:
//
//   t-DCF = C_miss pi'_tar P_miss + C_fa,non pi'_non P_fa,non + C_fa,spf pi'_spf P_fa,spf
//
// with asserted priors pi' fixed before seeing the evaluation data.
// Unnormalised.

#include <cstddef>
#include <optional>

#include "teer/curves.hpp"
#include "teer/tandem.hpp"

namespace teer {

struct TdcfParams {
  double c_miss = 1.0;
  double c_fa_non = 1.0;
  double c_fa_spf = 1.0;
  TandemPriors asserted{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};

  /// Throws InputError unless every cost is strictly positive and finite.
  void validate() const;
};

double tdcf(const TdcfParams& params, const TandemRates& r);

struct TdcfMinimum {
  double value = 0.0;
  std::size_t asv_index = 0;
  std::size_t cm_index = 0;
};

/// Exact minimum of the t-DCF over all operating-point pairs, or over CM
/// points only when `fixed_asv_index` is given. Ties go to the smaller ASV
/// index, then the smaller CM index.
TdcfMinimum min_tdcf(const RateCurve& asv, const RateCurve& cm, const TdcfParams& params,
                     std::optional<std::size_t> fixed_asv_index = std::nullopt);

struct TdcfBounds {
  double lo = 0.0;
  double hi = 0.0;
  double value = 0.0;
};

/// t-DCF at the concurrent point, where all three tandem rates equal
/// `p_e_cross`, with the bounds min(C) P_E and max(C) P_E.
TdcfBounds tdcf_bounds_at_concurrent(const TdcfParams& params, double p_e_cross);

}  // namespace teer
