// Copyright 2026 The hhverify Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hhv/cli.hpp"
#include "hhv/matrix_core.hpp"
#include "hhv/report.hpp"

using namespace hhv;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) {
    out.push_back(w);
  }
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("hhverify_test_" + name);
}

}  // namespace

TEST_CASE("exit codes match the golden table") {
  std::ifstream table(std::string(HHV_GOLDEN_DIR) + "/exit_codes.txt");
  REQUIRE(table.good());
  int cases = 0;
  for (std::string line; std::getline(table, line);) {
    if (line.empty() || line[0] == '#') {
      continue;
    }
    const auto bar = line.find('|');
    REQUIRE(bar != std::string::npos);
    const auto args = split(line.substr(0, bar));
    const int expected = std::stoi(line.substr(bar + 1));
    const Result r = run_cli(args);
    INFO(line);
    CHECK(r.code == expected);
    if (expected == cli::kExitUsage) {
      CHECK(r.err.find("error:") == 0);
      CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
    }
    ++cases;
  }
  CHECK(cases > 10);
}

TEST_CASE("list matches the golden listing") {
  const Result r = run_cli({"list"});
  CHECK(r.code == 0);
  CHECK(r.out == slurp(std::string(HHV_GOLDEN_DIR) + "/list.txt"));
  std::istringstream lines(r.out);
  std::size_t n = 0;
  for (std::string line; std::getline(lines, line);) {
    const auto tab = line.find('\t');
    REQUIRE(tab != std::string::npos);
    CHECK(is_registered(line.substr(0, tab)));
    ++n;
  }
  CHECK(n == list_inequalities().size());
}

TEST_CASE("verify writes a JSON report that round-trips") {
  const Result r = run_cli(split("verify op-hh --dim 2 --p 2 --trials 300 --seed 42 --no-timing"));
  REQUIRE(r.code == 0);
  const CampaignReport rep = parse_report(r.out);
  CHECK(rep.inequality == "op-hh");
  CHECK(rep.trials == 300);
  CHECK(rep.config.seed == 42);
  CHECK(rep.config.power == 2);
  CHECK(rep.elapsed_ms == 0.0);
  CHECK(serialize_report(rep, ReportFormat::kJson, {false}) == r.out);
  const auto j = nlohmann::json::parse(r.out);
  for (const char* key : {"inequality", "config", "trials", "min_margin", "witness",
                          "failures", "elapsed_ms"}) {
    CHECK(j.contains(key));
  }
  // lossless float text
  CHECK(std::stod(format_double(rep.min_margin)) == rep.min_margin);
  CHECK(std::stod(format_double(0.1 + 0.2)) == 0.1 + 0.2);
}

TEST_CASE("csv output has the fixed header") {
  const Result r = run_cli(split("verify det-diff --dim 2 --order 3 --trials 50 --format csv"));
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string header;
  std::string row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "inequality,seed,trials,dim,order,power,min_margin,failures,elapsed_ms");
  CHECK(row.rfind("det-diff,0,50,2,3,", 0) == 0);
  CHECK(std::count(row.begin(), row.end(), ',') == 8);
}

TEST_CASE("config file values sit between defaults and flags") {
  const auto cfg = temp_path("config.ini");
  {
    std::ofstream f(cfg);
    f << "dim=3\ntrials=25\nseed=9\n";
  }
  const Result a = run_cli({"verify", "op-hh", "--config", cfg.string(), "--no-timing"});
  REQUIRE(a.code == 0);
  const CampaignReport ra = parse_report(a.out);
  CHECK(ra.config.dim == 3);
  CHECK(ra.trials == 25);
  CHECK(ra.config.seed == 9);
  const Result b = run_cli({"verify", "op-hh", "--config", cfg.string(), "--trials", "7"});
  REQUIRE(b.code == 0);
  const CampaignReport rb = parse_report(b.out);
  CHECK(rb.trials == 7);
  CHECK(rb.config.dim == 3);
  std::filesystem::remove(cfg);
}

TEST_CASE("out path and report replay") {
  const auto path = temp_path("report.json");
  const Result r = run_cli({"verify", "det-rho", "--dim", "3", "--order", "3", "--rho", "1.5",
                            "--trials", "100", "--out", path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  const Result replay = run_cli({"replay", "--report", path.string()});
  CHECK(replay.code == 0);
  const auto j = nlohmann::json::parse(replay.out);
  CHECK(j["reproduced"].get<bool>());
  CHECK(j["relative_difference"].get<double>() <= 1e-12);

  // a tampered margin is not reproduced
  CampaignReport rep = parse_report(slurp(path));
  rep.min_margin = rep.min_margin * 2.0 + 1.0;
  {
    std::ofstream f(path);
    f << serialize_report(rep, ReportFormat::kJson);
  }
  CHECK(run_cli({"replay", "--report", path.string()}).code == 1);
  std::filesystem::remove(path);
  CHECK(run_cli({"replay", "--report", path.string()}).code == 2);
}

TEST_CASE("replay from matrix blocks") {
  const auto path = temp_path("matrices.txt");
  {
    std::ofstream f(path);
    const SymMatrix i2 = SymMatrix::identity(2);
    f << format_matrix(i2) << format_matrix(i2) << format_matrix(i2);
  }
  const Result r = run_cli({"replay", "serre-rev", "--matrices", path.string()});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["margin"].get<double>()) < 1e-14);
  CHECK(run_cli({"replay", "op-hh", "--matrices", path.string()}).code == 2);
  std::filesystem::remove(path);
}

TEST_CASE("demo lists the three counterexamples") {
  const Result r = run_cli(split("demo counterexamples --trials 10000"));
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["counterexamples"].size() == 3);
  for (const auto& c : j["counterexamples"]) {
    CHECK(c["found"].get<bool>());
    CHECK(c["margin"].get<double>() < 0.0);
    CHECK(c.contains("witness"));
  }
  CHECK(j["reference_points"]["popoviciu-exp"]["margin"].get<double>() ==
        doctest::Approx(-0.25258).epsilon(1e-4));
  CHECK(j["reference_points"]["negsqrt-order2"]["margin"].get<double>() ==
        doctest::Approx(-0.3407).epsilon(1e-4));
}

TEST_CASE("search on a true statement finds nothing") {
  const Result r = run_cli(split("search op-hh --p 2 --trials 300"));
  CHECK(r.code == 0);
  CHECK_FALSE(nlohmann::json::parse(r.out)["found"].get<bool>());
}

TEST_CASE("malformed reports raise ParseError") {
  CHECK_THROWS_AS(parse_report("{"), ParseError);
  CHECK_THROWS_AS(parse_report("{\"inequality\": \"op-hh\"}"), ParseError);
}
