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

#include "teer/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <thread>

#include "teer/error.hpp"
#include "teer/format.hpp"
#include "teer/path.hpp"
#include "teer/simulate.hpp"

namespace teer::cli {

namespace {

using Json = nlohmann::ordered_json;

// Thresholds are score values and are written exactly; rates are rounded to
// six significant digits.
Json threshold_json(double t) {
  if (std::isinf(t)) return t < 0 ? "-inf" : "inf";
  return t;
}

Json rate_json(double x) { return round_sig6(x); }

Json optional_rate(const std::optional<double>& x) {
  return x ? rate_json(*x) : Json(nullptr);
}

unsigned thread_budget() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TEER_THREADS")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end != env && cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

std::vector<SpoofPrevalence> to_prevalences(const std::vector<double>& rhos) {
  std::vector<SpoofPrevalence> out;
  for (double r : rhos) {
    if (!(r >= 0.0 && r <= 1.0))
      throw InputError("rho " + format_exact(r) + " is outside [0, 1]");
    out.emplace_back(r);
  }
  if (out.empty()) throw InputError("no rho values given");
  return out;
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty() || out_path == "-") {
    out << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + out_path + "'");
  f << text;
  if (!f) throw InputError("cannot write '" + out_path + "'");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
}

AsvScoreSet load_asv(const std::string& path) {
  try {
    return parse_asv_scores(read_text_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

CmScoreSet load_cm(const std::string& path) {
  try {
    return parse_cm_scores(read_text_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

PairedScoreSet load_paired(const std::string& path) {
  try {
    return parse_paired_scores(read_text_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

struct TdcfFlags {
  double c_miss = 1.0, c_fa_non = 1.0, c_fa_spf = 1.0;
  double pi_tar = -1.0, pi_non = -1.0, pi_spf = -1.0;

  void add(CLI::App* app) {
    app->add_option("--c-miss", c_miss, "cost of a tandem miss")->capture_default_str();
    app->add_option("--c-fa-non", c_fa_non, "cost of accepting a nontarget")->capture_default_str();
    app->add_option("--c-fa-spf", c_fa_spf, "cost of accepting a spoof")->capture_default_str();
    app->add_option("--pi-tar", pi_tar, "asserted target prior");
    app->add_option("--pi-non", pi_non, "asserted nontarget prior");
    app->add_option("--pi-spf", pi_spf, "asserted spoof prior");
  }

  bool any_given(const CLI::App* app) const {
    for (const char* name : {"--c-miss", "--c-fa-non", "--c-fa-spf", "--pi-tar", "--pi-non", "--pi-spf"})
      if (app->count(name) > 0) return true;
    return false;
  }

  TdcfParams params(const CLI::App* app) const {
    for (const char* name : {"--pi-tar", "--pi-non", "--pi-spf"})
      if (app->count(name) == 0)
        throw InputError("t-DCF needs all of --pi-tar, --pi-non and --pi-spf");
    TdcfParams p{c_miss, c_fa_non, c_fa_spf, TandemPriors(pi_tar, pi_non, pi_spf)};
    p.validate();
    return p;
  }
};

TdcfBlock make_tdcf_block(const RateCurve& asv, const RateCurve& cm, const TdcfParams& params,
                          const ConcurrentPoint& point, std::optional<std::size_t> fixed_asv) {
  TdcfBlock b;
  b.params = params;
  b.minimum = min_tdcf(asv, cm, params, fixed_asv);
  b.min_asv_threshold = asv.threshold_at(b.minimum.asv_index);
  b.min_cm_threshold = cm.threshold_at(b.minimum.cm_index);
  b.at_concurrent = tdcf(params, point.rates);
  b.bounds = tdcf_bounds_at_concurrent(params, point.teer);
  return b;
}

Json tdcf_json(const TdcfBlock& b) {
  const auto& pr = b.params.asserted;
  Json j;
  j["params"] = {{"c_miss", b.params.c_miss},   {"c_fa_non", b.params.c_fa_non},
                 {"c_fa_spf", b.params.c_fa_spf}, {"pi_tar", pr.tar()},
                 {"pi_non", pr.non()},            {"pi_spf", pr.spoof()}};
  j["min_tdcf"] = {{"value", rate_json(b.minimum.value)},
                   {"tau_asv", threshold_json(b.min_asv_threshold)},
                   {"tau_cm", threshold_json(b.min_cm_threshold)}};
  j["tdcf_at_concurrent"] = rate_json(b.at_concurrent);
  j["concurrent_bounds"] = {{"lo", rate_json(b.bounds.lo)},
                            {"value", rate_json(b.bounds.value)},
                            {"hi", rate_json(b.bounds.hi)}};
  return j;
}

int exit_for(const ConcurrentPoint& p) { return p.warning ? kSolverWarning : kOk; }

// ---------------------------------------------------------------------------
// Commands

struct EvalOptions {
  std::string asv, cm, paired, out, format = "json";
  std::vector<double> rhos{0.0, 0.5, 1.0};
  TdcfFlags tdcf;
};

int cmd_eval(const EvalOptions& o, const CLI::App* app, std::ostream& out) {
  if (o.asv.empty()) throw InputError("--asv-scores is required");
  if (o.cm.empty()) throw InputError("--cm-scores is required");
  auto rhos = to_prevalences(o.rhos);
  std::optional<TdcfParams> tdcf;
  if (o.tdcf.any_given(app)) tdcf = o.tdcf.params(app);
  auto asv = load_asv(o.asv);
  auto cm = load_cm(o.cm);
  std::optional<PairedScoreSet> paired;
  if (!o.paired.empty()) paired = load_paired(o.paired);

  const unsigned threads = thread_budget();
  if (o.format == "csv") {
    auto asv_curve = asv_rate_curve(asv);
    auto cm_curve = cm_rate_curve(cm);
    std::string text = path_csv_header();
    for (auto rho : rhos) text += path_csv_rows(build_teer_path(asv_curve, cm_curve, rho, threads));
    emit(text, o.out, out);
    return kOk;
  }

  auto report = build_eval_report(asv, cm, rhos, tdcf, threads);
  report.asv_path = o.asv;
  report.cm_path = o.cm;
  if (paired) report.correlation = class_conditional_correlation(*paired);
  emit(to_json(report).dump(2) + "\n", o.out, out);
  return exit_for(report.concurrent);
}

struct PathOptions {
  std::string asv, cm, out;
  double rho = 0.0;
};

int cmd_path(const PathOptions& o, std::ostream& out) {
  if (o.asv.empty()) throw InputError("--asv-scores is required");
  if (o.cm.empty()) throw InputError("--cm-scores is required");
  auto rho = to_prevalences({o.rho}).front();
  auto asv = asv_rate_curve(load_asv(o.asv));
  auto cm = cm_rate_curve(load_cm(o.cm));
  auto path = build_teer_path(asv, cm, rho, thread_budget());
  emit(path_csv_header() + path_csv_rows(path), o.out, out);
  return kOk;
}

struct SimulateOptions {
  SimulationParams params;
  long long n_per_class = static_cast<long long>(SimulationParams{}.n_per_class);
  std::string out_prefix = "sim";
};

int cmd_simulate(SimulateOptions o, std::ostream& out) {
  if (o.n_per_class <= 0) throw InputError("--n-per-class must be positive");
  o.params.n_per_class = static_cast<std::size_t>(o.n_per_class);
  o.params.validate();
  auto sim = simulate_scores(o.params);

  const std::string asv_file = o.out_prefix + "_asv.txt";
  const std::string cm_file = o.out_prefix + "_cm.txt";
  const std::string paired_file = o.out_prefix + "_paired.txt";
  const std::string meta_file = o.out_prefix + "_params.json";
  write_file(asv_file, write_asv_scores(sim.asv));
  write_file(cm_file, write_cm_scores(sim.cm));
  write_file(paired_file, write_paired_scores(sim.paired));

  Json meta;
  meta["tool"] = "teer";
  meta["version"] = kVersion;
  meta["eer_asv_non"] = o.params.eer_asv_non;
  meta["eer_asv_spf"] = o.params.eer_asv_spf;
  meta["eer_cm"] = o.params.eer_cm;
  meta["n_per_class"] = o.params.n_per_class;
  meta["seed"] = o.params.seed;
  meta["files"] = {{"asv", asv_file}, {"cm", cm_file}, {"paired", paired_file}};
  write_file(meta_file, meta.dump(2) + "\n");
  out << asv_file << '\n' << cm_file << '\n' << paired_file << '\n' << meta_file << '\n';
  return kOk;
}

struct CorrelateOptions {
  std::string paired, out, format = "json";
};

int cmd_correlate(const CorrelateOptions& o, std::ostream& out) {
  if (o.paired.empty()) throw InputError("--paired-scores is required");
  auto report = class_conditional_correlation(load_paired(o.paired));
  if (o.format == "csv") {
    std::string text = "group,n,r\n";
    auto row = [&](const std::string& group, const CorrelationEntry& e) {
      text += group + ',' + std::to_string(e.n) + ',' + (e.r ? format_sig6(*e.r) : "") + '\n';
    };
    for (const auto& [cls, e] : report.per_class) row(std::string(to_string(cls)), e);
    for (const auto& [id, e] : report.per_attack) row("attack:" + id, e);
    emit(text, o.out, out);
  } else {
    emit(to_json(report).dump(2) + "\n", o.out, out);
  }
  return kOk;
}

struct TdcfOptions {
  std::string asv, cm, out;
  std::optional<double> asv_threshold;
  TdcfFlags tdcf;
};

int cmd_tdcf(const TdcfOptions& o, const CLI::App* app, std::ostream& out) {
  if (o.asv.empty()) throw InputError("--asv-scores is required");
  if (o.cm.empty()) throw InputError("--cm-scores is required");
  auto params = o.tdcf.params(app);
  auto asv = asv_rate_curve(load_asv(o.asv));
  auto cm = cm_rate_curve(load_cm(o.cm));
  auto point = concurrent_teer(asv, cm, SpoofPrevalence(0.0), thread_budget());
  std::optional<std::size_t> fixed;
  if (o.asv_threshold) fixed = asv.operating_index(*o.asv_threshold);
  auto block = make_tdcf_block(asv, cm, params, point, fixed);
  Json j = tdcf_json(block);
  j["concurrent_teer"] = rate_json(point.teer);
  emit(j.dump(2) + "\n", o.out, out);
  return exit_for(point);
}

}  // namespace

// ---------------------------------------------------------------------------

EvalReport build_eval_report(const AsvScoreSet& asv_scores, const CmScoreSet& cm_scores,
                             const std::vector<SpoofPrevalence>& rhos,
                             const std::optional<TdcfParams>& tdcf_params, unsigned threads) {
  EvalReport r;
  r.n_tar = asv_scores.tar.size();
  r.n_non = asv_scores.non.size();
  r.n_spf = asv_scores.spf.size();
  r.n_bona = cm_scores.bona.size();
  r.n_cm_spf = cm_scores.spf.size();

  auto asv = asv_rate_curve(asv_scores);
  auto cm = cm_rate_curve(cm_scores);
  TandemGrid grid(asv, cm);

  const SpoofPrevalence first = rhos.empty() ? SpoofPrevalence(0.0) : rhos.front();
  r.special_cases = special_case_eers(asv, cm, first);
  r.concurrent = *r.special_cases.concurrent;

  for (auto rho : rhos) {
    auto path = build_teer_path(asv, cm, rho, threads);
    PathSummary s;
    s.rho = rho.value();
    s.entries = path.entries.size();
    s.asv_critical_threshold = asv.threshold_at(path.asv_critical_index);
    s.cm_critical_threshold = cm.threshold_at(path.cm_critical_index);
    auto best = std::min_element(path.entries.begin(), path.entries.end(),
                                 [](const auto& a, const auto& b) { return a.teer < b.teer; });
    s.min_teer = best->teer;
    s.min_teer_asv_threshold = best->asv_threshold;
    if (auto mix = mixture_eer(asv, rho)) s.mixture_eer = mix->eer;
    s.concurrent = concurrent_from_path(asv, cm, path);
    auto rates = grid.at(r.concurrent.asv_index, r.concurrent.cm_index);
    s.intersection_deviation = std::abs(rates.miss - tandem_fa_total(rho, rates.fa_non, rates.fa_spf));
    r.paths.push_back(s);
  }

  if (tdcf_params) r.tdcf = make_tdcf_block(asv, cm, *tdcf_params, r.concurrent, std::nullopt);
  return r;
}

nlohmann::ordered_json to_json(const ConcurrentPoint& p) {
  Json j;
  j["concurrent_teer"] = rate_json(p.teer);
  j["tau_asv"] = threshold_json(p.asv_threshold);
  j["tau_cm"] = threshold_json(p.cm_threshold);
  j["rate_spread"] = rate_json(p.rate_spread);
  j["warning"] = p.warning;
  j["grid_step"] = rate_json(p.grid_step);
  j["xpoint_residual"] = rate_json(p.xpoint_residual);
  j["sign_changes"] = p.sign_changes;
  j["rates"] = {{"miss", rate_json(p.rates.miss)},
                {"fa_non", rate_json(p.rates.fa_non)},
                {"fa_spf", rate_json(p.rates.fa_spf)}};
  return j;
}

nlohmann::ordered_json to_json(const CorrelationReport& report) {
  auto entry = [](const CorrelationEntry& e) {
    Json j;
    if (e.r) j["r"] = rate_json(*e.r);
    j["n"] = e.n;
    if (!e.r) j["reason"] = e.reason;
    return j;
  };
  Json j;
  j["per_class"] = Json::object();
  for (const auto& [cls, e] : report.per_class) j["per_class"][std::string(to_string(cls))] = entry(e);
  if (!report.per_attack.empty()) {
    j["per_attack"] = Json::object();
    for (const auto& [id, e] : report.per_attack) j["per_attack"][id] = entry(e);
  }
  return j;
}

nlohmann::ordered_json to_json(const EvalReport& r) {
  Json j;
  Json& meta = j["metadata"];
  meta["tool"] = "teer";
  meta["version"] = kVersion;
  meta["asv_scores"] = r.asv_path;
  meta["cm_scores"] = r.cm_path;
  meta["trials"] = {{"asv", {{"target", r.n_tar}, {"nontarget", r.n_non}, {"spoof", r.n_spf}}},
                    {"cm", {{"bonafide", r.n_bona}, {"spoof", r.n_cm_spf}}}};
  meta["conventions"] = {
      {"decision", "accept iff score > threshold"},
      {"eer", "nearest operating point to miss = fa; smallest index on ties; midpoint reported"},
      {"path", "per ASV operating point, CM point minimising |miss - fa_rho|; smallest on ties"},
      {"concurrent", "sign change of the cross-point residual along the rho = 0 path"}};

  const auto& sc = r.special_cases;
  Json& special = j["special_case_eers"];
  special["asv_tar_vs_non"] = optional_rate(sc.asv_tar_vs_non);
  special["asv_tar_vs_spf"] = optional_rate(sc.asv_tar_vs_spf);
  special["asv_tar_vs_mix"] = Json::array();
  for (const auto& p : r.paths)
    special["asv_tar_vs_mix"].push_back({{"rho", p.rho}, {"eer", optional_rate(p.mixture_eer)}});
  special["cm_bona_vs_spf"] = rate_json(sc.cm_bona_vs_spf);
  special["concurrent"] = rate_json(r.concurrent.teer);

  j["concurrent"] = to_json(r.concurrent);

  j["paths"] = Json::array();
  for (const auto& p : r.paths) {
    j["paths"].push_back({{"rho", p.rho},
                          {"entries", p.entries},
                          {"asv_critical_threshold", threshold_json(p.asv_critical_threshold)},
                          {"cm_critical_threshold", threshold_json(p.cm_critical_threshold)},
                          {"min_teer", rate_json(p.min_teer)},
                          {"min_teer_asv_threshold", threshold_json(p.min_teer_asv_threshold)},
                          {"concurrent_teer", rate_json(p.concurrent.teer)},
                          {"concurrent_rate_spread", rate_json(p.concurrent.rate_spread)},
                          {"concurrent_grid_step", rate_json(p.concurrent.grid_step)},
                          {"intersection_deviation", rate_json(p.intersection_deviation)}});
  }
  if (r.tdcf) j["tdcf"] = tdcf_json(*r.tdcf);
  if (r.correlation) j["correlation"] = to_json(*r.correlation);
  return j;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tandem EER toolkit: evaluates an ASV / spoofing-countermeasure cascade", "teer"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("teer ") + kVersion);

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "EERs, concurrent t-EER, t-EER path summaries");
  eval_cmd->add_option("--asv-scores", eval.asv, "ASV score file");
  eval_cmd->add_option("--cm-scores", eval.cm, "CM score file");
  eval_cmd->add_option("--paired-scores", eval.paired, "optional paired score file");
  eval_cmd->add_option("--rho", eval.rhos, "spoof prevalence list")->delimiter(',')->capture_default_str();
  eval_cmd->add_option("--out", eval.out, "output file (default stdout)");
  eval_cmd->add_option("--format", eval.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  eval.tdcf.add(eval_cmd);

  PathOptions path;
  auto* path_cmd = app.add_subcommand("path", "t-EER path as CSV");
  path_cmd->add_option("--asv-scores", path.asv, "ASV score file");
  path_cmd->add_option("--cm-scores", path.cm, "CM score file");
  path_cmd->add_option("--rho", path.rho, "spoof prevalence")->capture_default_str();
  path_cmd->add_option("--out", path.out, "output CSV (default stdout)");

  SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand("simulate", "write simulated Gaussian score files");
  sim_cmd->add_option("--eer-asv-non", sim.params.eer_asv_non)->capture_default_str();
  sim_cmd->add_option("--eer-asv-spf", sim.params.eer_asv_spf)->capture_default_str();
  sim_cmd->add_option("--eer-cm", sim.params.eer_cm)->capture_default_str();
  sim_cmd->add_option("--n-per-class", sim.n_per_class)->capture_default_str();
  sim_cmd->add_option("--seed", sim.params.seed)->capture_default_str();
  sim_cmd->add_option("--out", sim.out_prefix, "output prefix")->capture_default_str();

  CorrelateOptions corr;
  auto* corr_cmd = app.add_subcommand("correlate", "class-conditional ASV/CM score correlation");
  corr_cmd->add_option("--paired-scores", corr.paired, "paired score file");
  corr_cmd->add_option("--out", corr.out, "output file (default stdout)");
  corr_cmd->add_option("--format", corr.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  TdcfOptions td;
  auto* tdcf_cmd = app.add_subcommand("tdcf", "minimum t-DCF and concurrent-point bounds");
  tdcf_cmd->add_option("--asv-scores", td.asv, "ASV score file");
  tdcf_cmd->add_option("--cm-scores", td.cm, "CM score file");
  tdcf_cmd->add_option("--asv-threshold", td.asv_threshold, "fix the ASV threshold");
  tdcf_cmd->add_option("--out", td.out, "output file (default stdout)");
  td.tdcf.add(tdcf_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*eval_cmd) return cmd_eval(eval, eval_cmd, out);
    if (*path_cmd) return cmd_path(path, out);
    if (*sim_cmd) return cmd_simulate(sim, out);
    if (*corr_cmd) return cmd_correlate(corr, out);
    if (*tdcf_cmd) return cmd_tdcf(td, tdcf_cmd, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << '\n';
    return kSolverWarning;
  }
  return kInputError;
}

}  // namespace teer::cli
