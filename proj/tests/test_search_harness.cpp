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

#include <cmath>
#include <set>

#include "hhv/matrix_core.hpp"
#include "hhv/report.hpp"
#include "hhv/search_harness.hpp"

using namespace hhv;

namespace {

SearchConfig base_config() {
  SearchConfig c;
  c.seed = 42;
  c.trials = 200;
  return c;
}

}  // namespace

TEST_CASE("PSD sampling") {
  std::mt19937_64 rng(1);
  for (Distribution d : {Distribution::kGram, Distribution::kGramShift,
                         Distribution::kDiagonal, Distribution::kBoundary}) {
    for (std::size_t n = 1; n <= 4; ++n) {
      for (int t = 0; t < 20; ++t) {
        const Eigen::MatrixXd m = sample_psd(n, rng, d);
        CHECK(m == m.transpose());
        CHECK(loewner_margin(SymMatrix(m), SymMatrix::zero(n)).passes());
        if (d == Distribution::kDiagonal) {
          CHECK(m.isDiagonal());
        }
        if (d == Distribution::kBoundary && n >= 2) {
          Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
          lu.setThreshold(1e-10);
          CHECK(lu.rank() < static_cast<Eigen::Index>(n));
        }
      }
    }
  }
  CHECK_THROWS_AS(sample_psd(0, rng, Distribution::kGram), ConfigError);
}

TEST_CASE("trial streams depend only on seed and index") {
  auto a = trial_rng(42, 7);
  auto b = trial_rng(42, 7);
  auto c = trial_rng(42, 8);
  auto d = trial_rng(43, 7);
  const auto x = a();
  CHECK(x == b());
  CHECK(x != c());
  CHECK(x != d());
  CHECK(trial_distribution(Distribution::kMixed, 3) == Distribution::kBoundary);
  CHECK(trial_distribution(Distribution::kMixed, 7) == Distribution::kBoundary);
  CHECK(trial_distribution(Distribution::kMixed, 2) == Distribution::kGramShift);
  CHECK(trial_distribution(Distribution::kDiagonal, 3) == Distribution::kDiagonal);
  CHECK(parse_distribution("gram+shift") == Distribution::kGramShift);
  CHECK_THROWS_AS(parse_distribution("wishart"), ConfigError);
}

TEST_CASE("registry covers the inequality and probe identifiers") {
  std::set<std::string> ids;
  for (const auto& info : list_inequalities()) {
    CHECK(ids.insert(info.id).second);
    CHECK_FALSE(info.anchor.empty());
  }
  for (const char* id : {"op-hh", "det-diff", "esym-hlawka", "serre-rev", "minkowski-det",
                         "det-rho", "imm-hh", "lemma-main", "sk-general", "va", "det-hh",
                         "n-convex", "pos-diff", "cm", "sz-bound", "pq", "min2-order2",
                         "double-diff", "popoviciu-exp", "negsqrt-order2", "cubic-monotone"}) {
    CHECK(ids.count(id) == 1);
  }
  CHECK_THROWS_AS(run_campaign("no-such-id", base_config()), UnknownInequality);
  CHECK_THROWS_AS(search_counterexample("no-such-id", base_config()), UnknownTarget);
}

TEST_CASE("config validation") {
  SearchConfig c = base_config();
  c.trials = 0;
  CHECK_THROWS_AS(validate_config("op-hh", c), ConfigError);
  c = base_config();
  c.dim = 5;
  c.power = 6;
  CHECK_THROWS_AS(validate_config("op-hh", c), SizeLimit);
  c = base_config();
  c.dim = 3;
  CHECK_THROWS_AS(validate_config("serre-rev", c), DimensionMismatch);
  c = base_config();
  c.k = 3;
  CHECK_THROWS_AS(validate_config("esym-hlawka", c), IndexError);
  c = base_config();
  c.order = 3;
  c.k = 3;
  CHECK_THROWS_AS(validate_config("va", c), IndexError);
  c = base_config();
  c.character = "bogus";
  CHECK_THROWS_AS(validate_config("imm-hh", c), ConfigError);
}

TEST_CASE("every registered identifier runs a small campaign") {
  for (const auto& info : list_inequalities()) {
    SearchConfig c = base_config();
    c.trials = 40;
    c.order = info.id == "cm" ? 2 : 3;
    c.power = 2;
    c.k = 2;
    c.dim = 2;
    INFO(info.id);
    const CampaignReport r = run_campaign(info.id, c);
    CHECK(r.trials == 40);
    CHECK(r.witness_trial < 40);
    if (!info.expect_violation) {
      CHECK(r.passed());
    }
    const Margin replay = evaluate_inputs(info.id, r.witness, c);
    CHECK(replay.value == r.min_margin);
  }
}

TEST_CASE("campaigns of the stated examples") {
  SearchConfig c = base_config();
  c.trials = 1000;
  c.dim = 2;
  c.power = 2;
  CHECK(run_campaign("op-hh", c).passed());
  c.order = 4;
  c.dim = 3;
  CHECK(run_campaign("det-diff", c).passed());
  c.dim = 2;
  const CampaignReport s = run_campaign("serre-rev", c);
  CHECK(s.passed());
  CHECK(s.min_margin <= 1e-2 * s.scale);
  Witness equal;
  const Eigen::MatrixXd a{{2.0, 0.5}, {0.5, 1.0}};
  equal.matrices = {a, a, a};
  CHECK(std::abs(evaluate_inputs("serre-rev", equal, c).value) <= 1e-12);
}

TEST_CASE("campaign reports are independent of thread count") {
  SearchConfig c = base_config();
  c.trials = 300;
  c.dim = 3;
  c.power = 2;
  c.threads = 1;
  const std::string one =
      serialize_report(run_campaign("op-hh", c), ReportFormat::kJson, {false});
  c.threads = 4;
  const std::string four =
      serialize_report(run_campaign("op-hh", c), ReportFormat::kJson, {false});
  CHECK(one == four);
}

TEST_CASE("built-in counterexamples are found") {
  SearchConfig c = base_config();
  c.trials = 10000;
  const auto a = search_counterexample("popoviciu-exp", c);
  REQUIRE(a.has_value());
  CHECK(a->margin.value <= -0.25);
  const auto b = search_counterexample("negsqrt-order2", c);
  REQUIRE(b.has_value());
  CHECK(b->margin.value <= -0.34);
  const auto m = search_counterexample("cubic-monotone", c);
  REQUIRE(m.has_value());
  CHECK(m->margin.value < 0.0);
  CHECK(m->margin.value <= m->first_margin);
  // the refined witness re-evaluates to the reported margin
  CHECK(evaluate_inputs("popoviciu-exp", a->witness, c).value == a->margin.value);
}

TEST_CASE("true statements yield no counterexample") {
  SearchConfig c = base_config();
  c.trials = 2000;
  c.power = 2;
  CHECK_FALSE(search_counterexample("op-hh", c).has_value());
  CHECK_FALSE(search_counterexample("det-hh", c).has_value());
}

TEST_CASE("det-rho samples respect the condition limit") {
  SearchConfig c = base_config();
  c.order = 3;
  c.dim = 3;
  c.rho = 1.0;
  c.cond_limit = 1e4;
  for (std::uint64_t t = 0; t < 50; ++t) {
    const Witness w = sample_inputs("det-rho", c, t);
    for (const auto& m : w.matrices) {
      const Eigen::VectorXd ev = symmetric_eigenvalues(m);
      CHECK(ev(0) > 0.0);
      CHECK(ev(ev.size() - 1) / ev(0) <= 1e4);
    }
  }
}
