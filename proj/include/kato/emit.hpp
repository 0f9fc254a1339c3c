// Copyright 2026 The katosg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "kato/runner.hpp"

namespace kato {

enum class Format { Json, Csv, Plotdata };

/// Throws ValidationError for anything but json, csv, plotdata.
Format parse_format(const std::string& text);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double x);

nlohmann::ordered_json to_json(const RunReport& report);
/// Pretty-printed JSON with a trailing newline.
std::string render_json(const RunReport& report);

struct NamedSeries {
  std::string name;  // file stem, e.g. "lambda1_N1000_norm_decay"
  Series series;
};

/// Every series in the report, in report order.
std::vector<NamedSeries> collect_series(const RunReport& report);

/// "n,value" header then one row per sample.
std::string csv_text(const Series& series);
/// Two whitespace-separated columns with '#' comment lines.
std::string plot_text(const Series& series, const std::string& title);

/// Writes the report into out_dir (created if missing) and returns the
/// paths written. Throws IoError naming the path on failure.
std::vector<std::string> emit(const RunReport& report, Format format, const std::string& out_dir);

}  // namespace kato
