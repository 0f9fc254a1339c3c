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

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "kato/emit.hpp"
#include "kato/scenario.hpp"

using namespace kato;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const char* kSmall =
    "name: small\nmodel: pure_birth\nrate: (k+1)^2\nexpected: Dishonest\nladder: [200, 400]\nlambda: [1, 2]\n"
    "time: {t: [0.5], n_steps: 20, truncation: 40}\n";

RunReport small_run(int threads, bool stable = true) {
  RunOptions opt;
  opt.threads = threads;
  opt.stable_output = stable;
  return run(parse_scenario_text(kSmall, "small.yaml"), opt);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("katosg_test_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("doubles round-trip through their text form") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1e-12) == "1e-12");
  for (double x : {0.2720290549, 1.0 / 3.0, 6.02214076e23, -2.5e-300})
    CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("csv rows") {
  Series s;
  s.first_n = 1;
  s.values = {0.5, 0.4, 0.36};
  CHECK(csv_text(s) == "n,value\n1,0.5\n2,0.4\n3,0.36\n");
  CHECK(csv_text(Series{}) == "n,value\n");
  CHECK(plot_text(s, "demo") == "# demo\n# n value\n1 0.5\n2 0.4\n3 0.36\n");
}

TEST_CASE("formats") {
  CHECK(parse_format("json") == Format::Json);
  CHECK(parse_format("plotdata") == Format::Plotdata);
  CHECK_THROWS_AS(parse_format("xml"), ValidationError);
}

TEST_CASE("json report round-trips and carries the summary") {
  const RunReport r = small_run(1);
  const std::string text = render_json(r);
  const json j = json::parse(text);
  CHECK(j["tool"]["name"] == "katosg");
  CHECK(j["scenario"]["name"] == "small");
  CHECK(j["summary"]["verdict"] == "Dishonest");
  CHECK(j["summary"]["exit_code"] == 0);
  CHECK(j["honesty"].size() == 2);
  CHECK(j["honesty"][0]["points"].size() == 2);
  CHECK(j["time_defect"].size() == 1);
  CHECK_FALSE(j.contains("timing"));
  CHECK(j["errors"].empty());
  const json& p = j["honesty"][0]["points"][1];
  CHECK(p["norm_decay"]["series"]["values"].size() == 399);
  CHECK(p["defect"]["raw"].get<double>() == r.honesty[0].points[1].defect_raw.value());
  CHECK(p["functional_values"]["a0"].is_number());
  CHECK(nlohmann::ordered_json::parse(text).dump(2) + "\n" == text);
}

TEST_CASE("stable output does not depend on the thread count") {
  CHECK(render_json(small_run(1)) == render_json(small_run(3)));
  const json timed = json::parse(render_json(small_run(2, false)));
  CHECK(timed.contains("timing"));
  CHECK(timed["timing"]["threads"] == 2);
}

TEST_CASE("files written for each format") {
  const RunReport r = small_run(1);
  const fs::path dir = scratch("emit");

  const auto json_files = emit(r, Format::Json, (dir / "json").string());
  REQUIRE(json_files.size() == 1);
  CHECK(slurp(json_files.front()) == render_json(r));

  const auto series = collect_series(r);
  const auto csv = emit(r, Format::Csv, (dir / "csv").string());
  CHECK(csv.size() == series.size());
  CHECK(fs::exists(dir / "csv" / "small_lambda1_N200_norm_decay.csv"));
  CHECK(slurp(dir / "csv" / "small_lambda1_N200_norm_decay.csv").rfind("n,value\n1,0.5\n2,0.4\n3,0.36", 0) == 0);

  const auto dat = emit(r, Format::Plotdata, (dir / "dat").string());
  CHECK(dat.size() == series.size());
  CHECK(slurp(dat.front()).rfind("# small_", 0) == 0);
  fs::remove_all(dir);
}

TEST_CASE("unwritable output directories raise IO errors") {
  const RunReport r = small_run(1);
  CHECK_THROWS_AS(emit(r, Format::Json, "/proc/katosg_no_such_dir"), IoError);
  const fs::path dir = scratch("blocked");
  fs::create_directories(dir.parent_path());
  std::ofstream(dir.string()) << "a file, not a directory";
  CHECK_THROWS_AS(emit(r, Format::Csv, dir.string()), IoError);
  fs::remove(dir);
}
