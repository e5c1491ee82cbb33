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

#include "teer/score_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "teer/error.hpp"
#include "teer/format.hpp"

namespace teer {

namespace {

// Splits `text` into lines, dropping a trailing '\r', and calls
// fn(line_number, fields) for every non-blank, non-comment line.
template <typename Fn>
void for_each_record(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
      if (pos == line.size()) break;
      auto end = pos;
      while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
      fields.push_back(line.substr(pos, end - pos));
      pos = end;
    }
    if (fields.empty() || fields.front().front() == '#') continue;
    fn(line_no, fields);
  }
}

double parse_score(std::size_t line, std::string_view field) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = first + field.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw InputError(line, "malformed score '" + std::string(field) + "'");
  if (!std::isfinite(value))
    throw InputError(line, "non-finite score '" + std::string(field) + "'");
  return value;
}

std::optional<TrialClass> trial_class_from(std::string_view label) {
  if (label == "target") return TrialClass::Target;
  if (label == "nontarget") return TrialClass::Nontarget;
  if (label == "spoof") return TrialClass::Spoof;
  return std::nullopt;
}

std::optional<CmClass> cm_class_from(std::string_view label) {
  if (label == "bonafide") return CmClass::Bonafide;
  if (label == "spoof") return CmClass::Spoof;
  return std::nullopt;
}

void require_finite(const std::vector<double>& v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x)) throw InputError(std::string("non-finite ") + what + " score");
}

}  // namespace

std::string_view to_string(TrialClass c) {
  switch (c) {
    case TrialClass::Target: return "target";
    case TrialClass::Nontarget: return "nontarget";
    case TrialClass::Spoof: return "spoof";
  }
  return "?";
}

std::string_view to_string(CmClass c) {
  return c == CmClass::Bonafide ? "bonafide" : "spoof";
}

void validate(const AsvScoreSet& s) {
  if (s.tar.empty()) throw InputError("ASV scores: no target trials");
  if (s.non.empty() && s.spf.empty())
    throw InputError("ASV scores: need nontarget or spoof trials");
  require_finite(s.tar, "target");
  require_finite(s.non, "nontarget");
  require_finite(s.spf, "spoof");
}

void validate(const CmScoreSet& s) {
  if (s.bona.empty()) throw InputError("CM scores: no bonafide trials");
  if (s.spf.empty()) throw InputError("CM scores: no spoof trials");
  require_finite(s.bona, "bonafide");
  require_finite(s.spf, "spoof");
}

std::variant<AsvScoreSet, CmScoreSet> parse_subsystem_scores(std::string_view text,
                                                             SubsystemKind kind) {
  if (kind == SubsystemKind::Asv) return parse_asv_scores(text);
  return parse_cm_scores(text);
}

AsvScoreSet parse_asv_scores(std::string_view text) {
  AsvScoreSet out;
  for_each_record(text, [&](std::size_t line, const std::vector<std::string_view>& f) {
    if (f.size() != 2 && f.size() != 3)
      throw InputError(line, "expected '[trial-id] <score> <label>'");
    double score = parse_score(line, f[f.size() - 2]);
    auto cls = trial_class_from(f.back());
    if (!cls) throw InputError(line, "unknown label '" + std::string(f.back()) + "'");
    switch (*cls) {
      case TrialClass::Target: out.tar.push_back(score); break;
      case TrialClass::Nontarget: out.non.push_back(score); break;
      case TrialClass::Spoof: out.spf.push_back(score); break;
    }
  });
  validate(out);
  return out;
}

CmScoreSet parse_cm_scores(std::string_view text) {
  CmScoreSet out;
  for_each_record(text, [&](std::size_t line, const std::vector<std::string_view>& f) {
    if (f.size() != 2 && f.size() != 3)
      throw InputError(line, "expected '[trial-id] <score> <label>'");
    double score = parse_score(line, f[f.size() - 2]);
    auto cls = cm_class_from(f.back());
    if (!cls) throw InputError(line, "unknown label '" + std::string(f.back()) + "'");
    (*cls == CmClass::Bonafide ? out.bona : out.spf).push_back(score);
  });
  validate(out);
  return out;
}

PairedScoreSet parse_paired_scores(std::string_view text) {
  PairedScoreSet out;
  for_each_record(text, [&](std::size_t line, const std::vector<std::string_view>& f) {
    if (f.size() != 3 && f.size() != 4)
      throw InputError(line, "expected '<asv-score> <cm-score> <label> [attack-id]'");
    PairedRow row;
    row.asv_score = parse_score(line, f[0]);
    row.cm_score = parse_score(line, f[1]);
    auto cls = trial_class_from(f[2]);
    if (!cls) throw InputError(line, "unknown label '" + std::string(f[2]) + "'");
    row.cls = *cls;
    if (f.size() == 4) {
      if (row.cls != TrialClass::Spoof)
        throw InputError(line, "attack id on a " + std::string(f[2]) + " row");
      row.attack_id = std::string(f[3]);
    }
    out.rows.push_back(std::move(row));
  });
  if (out.rows.empty()) throw InputError("paired scores: no trials");
  return out;
}

std::string write_asv_scores(const AsvScoreSet& s) {
  std::string out;
  auto emit = [&](const std::vector<double>& v, std::string_view label) {
    for (double x : v) {
      out += format_exact(x);
      out += ' ';
      out += label;
      out += '\n';
    }
  };
  emit(s.tar, "target");
  emit(s.non, "nontarget");
  emit(s.spf, "spoof");
  return out;
}

std::string write_cm_scores(const CmScoreSet& s) {
  std::string out;
  for (double x : s.bona) out += format_exact(x) + " bonafide\n";
  for (double x : s.spf) out += format_exact(x) + " spoof\n";
  return out;
}

std::string write_paired_scores(const PairedScoreSet& s) {
  std::string out;
  for (const auto& r : s.rows) {
    out += format_exact(r.asv_score);
    out += ' ';
    out += format_exact(r.cm_score);
    out += ' ';
    out += to_string(r.cls);
    if (r.attack_id) {
      out += ' ';
      out += *r.attack_id;
    }
    out += '\n';
  }
  return out;
}

AsvScoreSet asv_scores_from_paired(const PairedScoreSet& p) {
  AsvScoreSet out;
  for (const auto& r : p.rows) {
    switch (r.cls) {
      case TrialClass::Target: out.tar.push_back(r.asv_score); break;
      case TrialClass::Nontarget: out.non.push_back(r.asv_score); break;
      case TrialClass::Spoof: out.spf.push_back(r.asv_score); break;
    }
  }
  validate(out);
  return out;
}

CmScoreSet cm_scores_from_paired(const PairedScoreSet& p, bool include_nontarget) {
  CmScoreSet out;
  for (const auto& r : p.rows) {
    if (r.cls == TrialClass::Spoof)
      out.spf.push_back(r.cm_score);
    else if (r.cls == TrialClass::Target || include_nontarget)
      out.bona.push_back(r.cm_score);
  }
  validate(out);
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace teer
