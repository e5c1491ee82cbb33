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

// Labeled detection scores for the two subsystems of a tandem system: the
// biometric comparator (ASV) and the spoofing countermeasure (CM).
//
// Score file format, one trial per line, '#' starts a comment line:
//
//   [trial-id] <score> <label>                      ASV or CM file
//   <asv-score> <cm-score> <label> [attack-id]      paired file
//
// ASV labels are target/nontarget/spoof, CM labels are bonafide/spoof.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace teer {

/// Tandem trial classes. There is no (spoof, nontarget) class: a spoofing
/// attack always claims the target identity.
enum class TrialClass { Target, Nontarget, Spoof };

enum class CmClass { Bonafide, Spoof };

enum class SubsystemKind { Asv, Cm };

std::string_view to_string(TrialClass c);
std::string_view to_string(CmClass c);

struct AsvScoreSet {
  std::vector<double> tar;
  std::vector<double> non;
  std::vector<double> spf;
};

/// CM bona fide scores of target and nontarget trials are pooled in `bona`.
struct CmScoreSet {
  std::vector<double> bona;
  std::vector<double> spf;
};

struct PairedRow {
  double asv_score = 0.0;
  double cm_score = 0.0;
  TrialClass cls = TrialClass::Target;
  std::optional<std::string> attack_id;  // spoof rows only

  bool operator==(const PairedRow&) const = default;
};

struct PairedScoreSet {
  std::vector<PairedRow> rows;
};

/// Throws InputError unless tar is non-empty, at least one negative class is
/// non-empty and every score is finite.
void validate(const AsvScoreSet& s);
/// Throws InputError unless both lists are non-empty and finite.
void validate(const CmScoreSet& s);

std::variant<AsvScoreSet, CmScoreSet> parse_subsystem_scores(std::string_view text,
                                                             SubsystemKind kind);
AsvScoreSet parse_asv_scores(std::string_view text);
CmScoreSet parse_cm_scores(std::string_view text);
PairedScoreSet parse_paired_scores(std::string_view text);

std::string write_asv_scores(const AsvScoreSet& s);
std::string write_cm_scores(const CmScoreSet& s);
std::string write_paired_scores(const PairedScoreSet& s);

/// ASV score set view of paired rows.
AsvScoreSet asv_scores_from_paired(const PairedScoreSet& p);

/// CM score set view of paired rows. With `include_nontarget` false only
/// target trials feed the bona fide pool.
CmScoreSet cm_scores_from_paired(const PairedScoreSet& p, bool include_nontarget = true);

/// Whole file as a string; InputError naming the path if it cannot be read.
std::string read_text_file(const std::string& path);

}  // namespace teer
