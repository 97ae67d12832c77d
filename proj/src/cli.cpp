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

#include "hhv/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "hhv/cone_calculus.hpp"
#include "hhv/matrix_core.hpp"
#include "hhv/report.hpp"
#include "hhv/scalar_convexity.hpp"
#include "hhv/search_harness.hpp"

namespace hhv::cli {

namespace {

using nlohmann::json;

inline constexpr double kReplayTolerance = 1e-12;

struct Options {
  SearchConfig config;
  std::string distribution = "mixed";
  std::string format = "json";
  std::string out_path;
  std::string report_path;
  std::string matrices_path;
  bool no_timing = false;
  std::string id;
  std::string what;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out_path);
  if (!file) {
    throw UsageError("cannot open output file '" + o.out_path + "'");
  }
  file << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw UsageError("cannot read '" + path + "'");
  }
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void require_json(const Options& o, const char* verb) {
  if (parse_report_format(o.format) != ReportFormat::kJson) {
    throw UsageError(std::string(verb) + " writes JSON only");
  }
}

int do_list(std::ostream& out) {
  for (const auto& info : list_inequalities()) {
    out << info.id << '\t' << info.anchor << '\n';
  }
  return kExitPass;
}

int do_verify(const Options& o, std::ostream& out) {
  const ReportFormat format = parse_report_format(o.format);
  validate_config(o.id, o.config);
  const CampaignReport report = run_campaign(o.id, o.config);
  emit(o, serialize_report(report, format, {!o.no_timing}), out);
  return report.passed() ? kExitPass : kExitFailure;
}

json search_json(const std::string& id, const std::optional<SearchResult>& r) {
  json j = {{"target", id},
            {"expect_violation", inequality_info(id).expect_violation},
            {"found", r.has_value()}};
  if (r) {
    j["trial"] = r->trial;
    j["first_margin"] = r->first_margin;
    j["margin"] = r->margin.value;
    j["scale"] = r->margin.scale;
    j["witness"] = witness_to_json(r->witness);
  }
  return j;
}

int do_search(const Options& o, std::ostream& out) {
  require_json(o, "search");
  if (!is_registered(o.id)) {
    throw UnknownTarget("unknown search target '" + o.id + "'");
  }
  validate_config(o.id, o.config);
  const auto result = search_counterexample(o.id, o.config);
  json j = search_json(o.id, result);
  j["config"] = config_to_json(o.config);
  emit(o, j.dump(2) + "\n", out);
  const bool expected = inequality_info(o.id).expect_violation;
  return result.has_value() == expected ? kExitPass : kExitFailure;
}

int do_replay(const Options& o, std::ostream& out) {
  require_json(o, "replay");
  if (!o.report_path.empty()) {
    const CampaignReport report = parse_report(read_file(o.report_path));
    if (!is_registered(report.inequality)) {
      throw UnknownInequality("unknown inequality '" + report.inequality + "'");
    }
    const Margin m = evaluate_inputs(report.inequality, report.witness, report.config);
    const double rel = relative_difference(m.value, report.min_margin);
    const bool ok = rel <= kReplayTolerance;
    const json j = {{"inequality", report.inequality},
                    {"reported", report.min_margin},
                    {"replayed", m.value},
                    {"scale", m.scale},
                    {"relative_difference", rel},
                    {"reproduced", ok}};
    emit(o, j.dump(2) + "\n", out);
    return ok ? kExitPass : kExitFailure;
  }
  if (o.id.empty() || o.matrices_path.empty()) {
    throw UsageError("replay needs --report PATH or <id> --matrices PATH");
  }
  if (!is_registered(o.id)) {
    throw UnknownInequality("unknown inequality '" + o.id + "'");
  }
  std::istringstream in(read_file(o.matrices_path));
  Witness w;
  json warnings = json::array();
  for (const auto& parsed : parse_matrices(in)) {
    w.matrices.push_back(parsed.matrix.matrix());
    if (parsed.warning) {
      warnings.push_back(*parsed.warning);
    }
  }
  SearchConfig config = o.config;
  if (!w.matrices.empty()) {
    config.dim = static_cast<std::size_t>(w.matrices.front().rows());
  }
  const Margin m = evaluate_inputs(o.id, w, config);
  const bool ok = m.passes(config.tol);
  const json j = {{"inequality", o.id},
                  {"margin", m.value},
                  {"scale", m.scale},
                  {"passed", ok},
                  {"warnings", warnings}};
  emit(o, j.dump(2) + "\n", out);
  return ok ? kExitPass : kExitFailure;
}

/// Margins at the reference points quoted for the three false statements.
json reference_points() {
  const double ones[] = {1.0, 1.0, 1.0};
  const double a = iterated_difference(make_exp_neg(1.0), 0.0, ones).value;
  const std::vector<ConePoint> steps{ConePoint({1.0, 2.0}), ConePoint({2.0, 1.0})};
  const double b = cone_iterated_difference(make_neg_two_sqrt_xy(),
                                            ConePoint({0.01, 0.01}), steps)
                       .value;
  const double h[] = {0.5};
  const double c = iterated_difference(make_shifted_cubic(), 3.0, h).value;
  return {{"popoviciu-exp", {{"x", {1.0, 1.0, 1.0}}, {"margin", a}}},
          {"negsqrt-order2",
           {{"X", {0.01, 0.01}}, {"A", {1.0, 2.0}}, {"B", {2.0, 1.0}}, {"margin", b}}},
          {"cubic-monotone", {{"x", 3.0}, {"h", 0.5}, {"margin", c}}}};
}

int do_demo(const Options& o, std::ostream& out) {
  require_json(o, "demo");
  if (o.what != "counterexamples") {
    throw UsageError("demo supports: counterexamples");
  }
  json found = json::array();
  bool all = true;
  for (const char* id : {"popoviciu-exp", "negsqrt-order2", "cubic-monotone"}) {
    const auto r = search_counterexample(id, o.config);
    json j = search_json(id, r);
    j["statement"] = inequality_info(id).anchor;
    found.push_back(j);
    all = all && r.has_value();
  }
  const json j = {{"seed", o.config.seed},
                  {"trials", o.config.trials},
                  {"counterexamples", found},
                  {"reference_points", reference_points()}};
  emit(o, j.dump(2) + "\n", out);
  return all ? kExitPass : kExitFailure;
}

void add_config_options(CLI::App& app, Options& o) {
  SearchConfig& c = o.config;
  app.add_option("--dim", c.dim, "matrix or cone dimension N");
  app.add_option("--order", c.order, "difference order / number of summands n");
  app.add_option("--p", c.power, "tensor power p (l for lemma-main)");
  app.add_option("--k", c.k, "e_k index, va subset size, k for lemma-main");
  app.add_option("--rho", c.rho, "exponent for det-rho");
  app.add_option("--alpha", c.alpha, "real parameter for parametric functions");
  app.add_option("--trials", c.trials, "number of trials");
  app.add_option("--seed", c.seed, "campaign seed");
  app.add_option("--tol", c.tol, "relative tolerance");
  app.add_option("--distribution", o.distribution,
                 "mixed, gram, gram+shift, diagonal or boundary");
  app.add_option("--function", c.function, "catalog function id for probes");
  app.add_option("--character", c.character, "sign, trivial or standard");
  app.add_option("--cond-limit", c.cond_limit,
                 "largest condition number for definite samples");
  app.add_option("--threads", c.threads, "worker threads (0 = all cores)");
  app.add_option("--format", o.format, "json or csv");
  app.add_option("--out", o.out_path, "write the report to PATH");
  app.add_option("--report", o.report_path, "report to replay");
  app.add_option("--matrices", o.matrices_path, "matrix blocks to evaluate");
  app.add_flag("--no-timing", o.no_timing, "write elapsed_ms as 0");
  app.set_config("--config", "", "key=value file; flags take precedence");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Options o;
  CLI::App app{"Numerical checks of Hornich-Hlawka type inequalities",
               "hhverify"};
  app.fallthrough();
  app.require_subcommand(1);
  add_config_options(app, o);

  auto* list = app.add_subcommand("list", "list inequality identifiers");
  auto* verify = app.add_subcommand("verify", "run a verification campaign");
  verify->add_option("id", o.id, "inequality identifier")->required();
  auto* search = app.add_subcommand("search", "search for a counterexample");
  search->add_option("target", o.id, "target identifier")->required();
  auto* replay = app.add_subcommand("replay", "re-evaluate a witness");
  replay->add_option("id", o.id, "inequality identifier");
  auto* demo = app.add_subcommand("demo", "built-in demonstrations");
  demo->add_option("what", o.what, "counterexamples")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitPass;
    }
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    o.config.distribution = parse_distribution(o.distribution);
    parse_report_format(o.format);
    if (*list) {
      return do_list(out);
    }
    if (*verify) {
      return do_verify(o, out);
    }
    if (*search) {
      return do_search(o, out);
    }
    if (*replay) {
      return do_replay(o, out);
    }
    if (*demo) {
      return do_demo(o, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    args.emplace_back(argv[i]);
  }
  return run(args, out, err);
}

}  // namespace hhv::cli
