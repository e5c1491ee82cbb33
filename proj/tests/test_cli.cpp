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


#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "teer/cli.hpp"
#include "teer/format.hpp"
#include "teer/path.hpp"

using namespace teer;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code = 0;
  std::string out, err;
};

Result teer_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "teer");
  std::ostringstream out, err;
  Result r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) { return read_text_file(p.string()); }

void spit(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

struct TempDir {
  fs::path dir;
  explicit TempDir(const std::string& tag) {
    dir = fs::temp_directory_path() / ("teer_cli_" + tag + "_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~TempDir() { fs::remove_all(dir); }
  std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

// Simulated files under prefix "sim" in t.
void simulate_into(const TempDir& t, std::size_t n) {
  auto r = teer_cli({"simulate", "--n-per-class", std::to_string(n), "--out", t / "sim"});
  REQUIRE(r.code == 0);
}

}  // namespace

TEST_CASE("simulate is reproducible and validates its flags") {
  TempDir t("sim");
  simulate_into(t, 2000);
  std::vector<std::string> first;
  for (auto f : {"sim_asv.txt", "sim_cm.txt", "sim_paired.txt", "sim_params.json"})
    first.push_back(slurp(t / f));
  simulate_into(t, 2000);
  int k = 0;
  for (auto f : {"sim_asv.txt", "sim_cm.txt", "sim_paired.txt", "sim_params.json"})
    CHECK(slurp(t / f) == first[k++]);

  CHECK(teer_cli({"simulate", "--n-per-class", "0", "--out", t / "x"}).code == 2);
  CHECK(teer_cli({"simulate", "--eer-cm", "0.6", "--out", t / "x"}).code == 2);
}

TEST_CASE("eval reports input errors with exit code 2") {
  TempDir t("err");
  simulate_into(t, 500);
  auto missing = teer_cli({"eval", "--asv-scores", t / "sim_asv.txt", "--cm-scores",
                           t / "nope_cm.txt"});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("nope_cm.txt") != std::string::npos);

  auto bad_rho = teer_cli({"eval", "--asv-scores", t / "sim_asv.txt", "--cm-scores",
                           t / "sim_cm.txt", "--rho", "0,1.5"});
  CHECK(bad_rho.code == 2);

  spit(t / "broken.txt", "1 target\n2 maybe\n");
  auto broken = teer_cli({"eval", "--asv-scores", t / "broken.txt", "--cm-scores",
                          t / "sim_cm.txt"});
  CHECK(broken.code == 2);
  CHECK(broken.err.find("line 2") != std::string::npos);

  auto partial_tdcf = teer_cli({"eval", "--asv-scores", t / "sim_asv.txt", "--cm-scores",
                                t / "sim_cm.txt", "--c-miss", "2"});
  CHECK(partial_tdcf.code == 2);

  CHECK(teer_cli({"frobnicate"}).code == 2);
  CHECK(teer_cli({"--help"}).code == 0);
}

TEST_CASE("eval json is deterministic and rho-invariant") {
  TempDir t("eval");
  simulate_into(t, 20000);
  std::vector<std::string> args{"eval",  "--asv-scores", t / "sim_asv.txt", "--cm-scores",
                                t / "sim_cm.txt", "--rho", "0,0.2,0.5,0.8,1",
                                "--paired-scores", t / "sim_paired.txt", "--pi-tar", "0.9",
                                "--pi-non", "0.05", "--pi-spf", "0.05"};
  auto a = teer_cli(args), b = teer_cli(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);

  auto j = nlohmann::json::parse(a.out);
  CHECK(j["metadata"]["trials"]["asv"]["target"] == 20000);
  REQUIRE(j["paths"].size() == 5);
  double lo = 1.0, hi = 0.0, step = 0.0;
  for (const auto& p : j["paths"]) {
    lo = std::min(lo, p["concurrent_teer"].get<double>());
    hi = std::max(hi, p["concurrent_teer"].get<double>());
    step = std::max(step, p["concurrent_grid_step"].get<double>());
  }
  CHECK(hi - lo <= 2 * step);
  CHECK(j.contains("tdcf"));
  CHECK(j["correlation"]["per_class"].contains("target"));
}

TEST_CASE("eval csv reproduces its own t-EER values") {
  TempDir t("csv");
  simulate_into(t, 3000);
  auto r = teer_cli({"eval", "--asv-scores", t / "sim_asv.txt", "--cm-scores", t / "sim_cm.txt",
                     "--rho", "0,0.5,1", "--format", "csv"});
  REQUIRE(r.code == 0);
  auto asv = asv_rate_curve(parse_asv_scores(slurp(t / "sim_asv.txt")));
  auto cm = cm_rate_curve(parse_cm_scores(slurp(t / "sim_cm.txt")));
  TandemGrid g(asv, cm);

  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line + "\n" == path_csv_header());
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    REQUIRE(f.size() == 5);
    SpoofPrevalence rho{std::stod(f[0])};
    const std::size_t i = asv.operating_index(std::stod(f[1]));
    const std::size_t jj = cm.operating_index(std::stod(f[2]));
    CHECK(format_exact(asv.threshold_at(i)) == f[1]);
    CHECK(format_exact(cm.threshold_at(jj)) == f[2]);
    auto rates = g.at(i, jj);
    const double fa = tandem_fa_total(rho, rates.fa_non, rates.fa_spf);
    CHECK(format_sig6(0.5 * (rates.miss + fa)) == f[3]);
    ++rows;
  }
  std::size_t expected = 0;
  for (double rho : {0.0, 0.5, 1.0})
    expected += build_teer_path(asv, cm, SpoofPrevalence{rho}).entries.size();
  CHECK(rows == expected);
}

TEST_CASE("path on a one-score-per-class fixture") {
  TempDir t("path");
  spit(t / "asv.txt", "0 target\n0 nontarget\n0 spoof\n");
  spit(t / "cm.txt", "1 bonafide\n-1 spoof\n");
  auto r = teer_cli({"path", "--asv-scores", t / "asv.txt", "--cm-scores", t / "cm.txt",
                     "--rho", "0"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "rho,asv_threshold,cm_threshold,teer,residual\n0,-inf,-inf,0.5,-1\n");
}

TEST_CASE("correlate") {
  TempDir t("corr");
  spit(t / "p.txt",
       "1 2 target\n2 4 target\n3 5 target\n0 1 nontarget\n0 2 nontarget\n"
       "1 1 spoof A1\n2 0 spoof A1\n3 3 spoof A2\n4 1 spoof A2\n");
  auto r = teer_cli({"correlate", "--paired-scores", t / "p.txt"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["per_class"].contains("target"));
  CHECK(j["per_class"]["target"].contains("r"));
  CHECK_FALSE(j["per_class"]["nontarget"].contains("r"));
  CHECK(j["per_class"]["nontarget"].contains("reason"));
  CHECK(j["per_attack"]["A1"]["r"] == -1.0);

  spit(t / "q.txt", "1 2 target\n2 1 target\n0 1 spoof\n1 3 spoof\n");
  auto q = nlohmann::json::parse(teer_cli({"correlate", "--paired-scores", t / "q.txt"}).out);
  CHECK_FALSE(q.contains("per_attack"));
}

TEST_CASE("tdcf command") {
  TempDir t("tdcf");
  simulate_into(t, 2000);
  std::vector<std::string> base{"tdcf", "--asv-scores", t / "sim_asv.txt", "--cm-scores",
                                t / "sim_cm.txt"};
  auto args = base;
  for (std::string s : {"--pi-tar", "0.9", "--pi-non", "0.05", "--pi-spf", "0.05"})
    args.push_back(s);
  auto r = teer_cli(args);
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["min_tdcf"]["value"].get<double>() <= j["tdcf_at_concurrent"].get<double>());
  CHECK(teer_cli(base).code == 2);
}
