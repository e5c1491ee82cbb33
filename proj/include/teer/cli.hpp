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

// Command-line front end: eval, path, simulate, correlate, tdcf.
//
// Exit codes: 0 success, 2 input error, 3 solver warning (the concurrent
// point search found no sign change; output is still written).

#include <json.hpp>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "teer/analysis.hpp"
#include "teer/concurrent.hpp"
#include "teer/score_io.hpp"
#include "teer/tdcf.hpp"

namespace teer::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int { kOk = 0, kInputError = 2, kSolverWarning = 3 };

struct PathSummary {
  double rho = 0.0;
  std::size_t entries = 0;
  double asv_critical_threshold = 0.0;
  double cm_critical_threshold = 0.0;
  double min_teer = 0.0;
  double min_teer_asv_threshold = 0.0;
  std::optional<double> mixture_eer;  // target vs rho-mixture, accept-all CM
  ConcurrentPoint concurrent;         // located along this path
  double intersection_deviation = 0.0;  // |miss - fa_rho| at the global concurrent point
};

struct TdcfBlock {
  TdcfParams params;
  TdcfMinimum minimum;
  double min_asv_threshold = 0.0;
  double min_cm_threshold = 0.0;
  double at_concurrent = 0.0;
  TdcfBounds bounds;
};

struct EvalReport {
  std::string asv_path;
  std::string cm_path;
  std::size_t n_tar = 0, n_non = 0, n_spf = 0, n_bona = 0, n_cm_spf = 0;
  SpecialCaseEers special_cases;
  ConcurrentPoint concurrent;
  std::vector<PathSummary> paths;
  std::optional<TdcfBlock> tdcf;
  std::optional<CorrelationReport> correlation;
};

/// Everything `eval` reports, computed from parsed scores.
EvalReport build_eval_report(const AsvScoreSet& asv, const CmScoreSet& cm,
                             const std::vector<SpoofPrevalence>& rhos,
                             const std::optional<TdcfParams>& tdcf_params, unsigned threads);

nlohmann::ordered_json to_json(const EvalReport& report);
nlohmann::ordered_json to_json(const ConcurrentPoint& point);
nlohmann::ordered_json to_json(const CorrelationReport& report);

/// Runs one command line (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace teer::cli
