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

/**
 * @file report.hpp
 * JSON and CSV text for campaign reports. Doubles are written with the
 * shortest representation that reads back to the same value.
 */

#ifndef HHV_REPORT_HPP
#define HHV_REPORT_HPP

#include <string>
#include <string_view>

#include <json.hpp>

#include "hhv/search_harness.hpp"

namespace hhv {

enum class ReportFormat { kJson, kCsv };

ReportFormat parse_report_format(std::string_view name);

struct ReportOptions {
  /// When false, elapsed_ms is written as 0 so reports compare byte-wise.
  bool timing = true;
};

inline constexpr std::string_view kCsvHeader =
    "inequality,seed,trials,dim,order,power,min_margin,failures,elapsed_ms";

nlohmann::json witness_to_json(const Witness& w);
Witness witness_from_json(const nlohmann::json& j);

nlohmann::json config_to_json(const SearchConfig& c);
SearchConfig config_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const CampaignReport& r,
                              const ReportOptions& options = {});
CampaignReport report_from_json(const nlohmann::json& j);

/// JSON text (ending in a newline), or the CSV header plus one row.
std::string serialize_report(const CampaignReport& r, ReportFormat format,
                             const ReportOptions& options = {});
std::string csv_row(const CampaignReport& r, const ReportOptions& options = {});

/// Throws ParseError on malformed text or missing fields.
CampaignReport parse_report(std::string_view json_text);

/// Shortest round-trip decimal text of a double.
std::string format_double(double x);

}  // namespace hhv

#endif  // HHV_REPORT_HPP
