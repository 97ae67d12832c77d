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

#include "hhv/report.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace hhv {

namespace {

using nlohmann::json;

double number(const json& j) {
  if (j.is_null()) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return j.get<double>();
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("report is missing field '") + key + "'");
  }
  return j.at(key);
}

}  // namespace

ReportFormat parse_report_format(std::string_view name) {
  if (name == "json") {
    return ReportFormat::kJson;
  }
  if (name == "csv") {
    return ReportFormat::kCsv;
  }
  throw ConfigError("unknown format '" + std::string(name) + "'");
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

json witness_to_json(const Witness& w) {
  json mats = json::array();
  for (const auto& m : w.matrices) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        row.push_back(m(i, j));
      }
      rows.push_back(row);
    }
    mats.push_back(rows);
  }
  json vecs = json::array();
  for (const auto& v : w.vectors) {
    vecs.push_back(v);
  }
  return {{"matrices", mats}, {"vectors", vecs}};
}

Witness witness_from_json(const json& j) {
  Witness w;
  for (const auto& rows : field(j, "matrices")) {
    const auto n = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& row = rows.at(static_cast<std::size_t>(i));
      if (static_cast<Eigen::Index>(row.size()) != n) {
        throw ParseError("witness matrix is not square");
      }
      for (Eigen::Index k = 0; k < n; ++k) {
        m(i, k) = number(row.at(static_cast<std::size_t>(k)));
      }
    }
    w.matrices.push_back(m);
  }
  for (const auto& v : field(j, "vectors")) {
    std::vector<double> values;
    for (const auto& x : v) {
      values.push_back(number(x));
    }
    w.vectors.push_back(values);
  }
  return w;
}

json config_to_json(const SearchConfig& c) {
  return {{"seed", c.seed},
          {"trials", c.trials},
          {"dim", c.dim},
          {"order", c.order},
          {"power", c.power},
          {"k", c.k},
          {"rho", c.rho},
          {"alpha", c.alpha},
          {"distribution", distribution_name(c.distribution)},
          {"tol", c.tol},
          {"function", c.function},
          {"character", c.character},
          {"cond_limit", c.cond_limit}};
}

SearchConfig config_from_json(const json& j) {
  SearchConfig c;
  c.seed = field(j, "seed").get<std::uint64_t>();
  c.trials = field(j, "trials").get<std::size_t>();
  c.dim = field(j, "dim").get<std::size_t>();
  c.order = field(j, "order").get<std::size_t>();
  c.power = field(j, "power").get<std::size_t>();
  c.k = field(j, "k").get<std::size_t>();
  c.rho = number(field(j, "rho"));
  c.alpha = number(field(j, "alpha"));
  c.distribution = parse_distribution(field(j, "distribution").get<std::string>());
  c.tol = number(field(j, "tol"));
  c.function = field(j, "function").get<std::string>();
  c.character = field(j, "character").get<std::string>();
  c.cond_limit = number(field(j, "cond_limit"));
  return c;
}

json report_to_json(const CampaignReport& r, const ReportOptions& options) {
  return {{"inequality", r.inequality},
          {"config", config_to_json(r.config)},
          {"trials", r.trials},
          {"min_margin", r.min_margin},
          {"scale", r.scale},
          {"witness_trial", r.witness_trial},
          {"witness", witness_to_json(r.witness)},
          {"failures", r.failures},
          {"elapsed_ms", options.timing ? r.elapsed_ms : 0.0}};
}

CampaignReport report_from_json(const json& j) {
  CampaignReport r;
  try {
    r.inequality = field(j, "inequality").get<std::string>();
    r.config = config_from_json(field(j, "config"));
    r.trials = field(j, "trials").get<std::size_t>();
    r.min_margin = number(field(j, "min_margin"));
    r.scale = number(field(j, "scale"));
    r.witness_trial = field(j, "witness_trial").get<std::size_t>();
    r.witness = witness_from_json(field(j, "witness"));
    r.failures = field(j, "failures").get<std::size_t>();
    r.elapsed_ms = number(field(j, "elapsed_ms"));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
  return r;
}

std::string csv_row(const CampaignReport& r, const ReportOptions& options) {
  std::ostringstream out;
  out << r.inequality << ',' << r.config.seed << ',' << r.trials << ','
      << r.config.dim << ',' << r.config.order << ',' << r.config.power << ','
      << format_double(r.min_margin) << ',' << r.failures << ','
      << format_double(options.timing ? r.elapsed_ms : 0.0);
  return out.str();
}

std::string serialize_report(const CampaignReport& r, ReportFormat format,
                             const ReportOptions& options) {
  if (format == ReportFormat::kCsv) {
    return std::string(kCsvHeader) + "\n" + csv_row(r, options) + "\n";
  }
  return report_to_json(r, options).dump(2) + "\n";
}

CampaignReport parse_report(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return report_from_json(j);
}

}  // namespace hhv
