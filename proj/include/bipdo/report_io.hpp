// SPDX-License-Identifier: Apache-2.0
//
// JSON and CSV serialization of reports. Every document carries "schema_version";
// numbers are printed with 17 significant digits.
#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "bipdo/calculus.hpp"
#include "bipdo/verify.hpp"

namespace bipdo::io {

inline constexpr int kSchemaVersion = 1;

/// Frozen CSV column order of boundedness studies.
inline constexpr const char* kRatioCsvHeader = "seed,grid,p,q,r,s,eps,ratio,skipped";

nlohmann::json to_json(const ClassSpec& spec);
nlohmann::json to_json(const DecayReport& report);
nlohmann::json to_json(const ExpansionSeries& series);
nlohmann::json to_json(const RatioReport& report);
nlohmann::json to_json(const Report& report);
nlohmann::json to_json(const SampledFunction& f);

/// Adds schema_version and the document kind.
nlohmann::json document(const std::string& kind, nlohmann::json body);

/// Deterministic text: sorted keys, %.17g numbers, non-finite values as strings.
std::string dump(const nlohmann::json& j, int indent = 2);

void write_ratio_csv(const RatioReport& report, std::ostream& out);
/// Per-grid rows: grid,max_ratio,median_ratio,skipped.
void write_summary_csv(const RatioReport& report, std::ostream& out);
/// Samples as x,re,im rows.
void write_function_csv(const SampledFunction& f, std::ostream& out);
/// name,measured,tolerance,pass,observational rows.
void write_report_csv(const Report& report, std::ostream& out);

std::string format_double(double v);

}  // namespace bipdo::io
