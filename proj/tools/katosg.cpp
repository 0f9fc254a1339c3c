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

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kato/emit.hpp"
#include "kato/runner.hpp"
#include "kato/scenario.hpp"

namespace {

int fail(int code, const std::string& what) {
  std::cerr << "katosg: " << what << "\n";
  return code;
}

int list_models() {
  std::cout << "models:\n";
  for (const kato::ModelInfo& m : kato::model_catalog()) {
    std::printf("  %-18s params: %-30s %s\n", kato::to_string(m.id), m.parameters.c_str(), m.description.c_str());
  }
  std::cout << "shipped examples:\n";
  for (const kato::CatalogEntry& e : kato::shipped_examples()) {
    std::printf("  %-22s %-18s %-20s expected %s\n", e.name.c_str(), kato::to_string(e.id), e.rate.c_str(),
                kato::to_string(e.expected));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"katosg: honesty diagnostics for substochastic semigroups"};
  app.set_version_flag("--version", std::string(kato::tool_version()));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string format = "json";
  int threads = 0;
  bool stable = false;
  std::vector<double> lambdas;
  std::vector<long> ladder;

  CLI::App* run = app.add_subcommand("run", "run the diagnostics of a scenario file");
  run->add_option("config", config_path, "scenario YAML file")->required();
  run->add_option("--out", out_dir, "output directory (json goes to stdout when omitted)");
  run->add_option("--format", format, "json, csv or plotdata")->check(CLI::IsMember({"json", "csv", "plotdata"}));
  run->add_option("--threads", threads, "worker threads (default: KATO_THREADS, then all cores)");
  run->add_flag("--stable-output", stable, "omit timing so reports are byte-identical across runs");
  run->add_option("--lambda", lambdas, "override the lambda list, e.g. 0.5,1,2")->delimiter(',');
  run->add_option("--ladder", ladder, "override the truncation ladder, e.g. 1000,10000")->delimiter(',');

  CLI::App* validate = app.add_subcommand("validate", "check a scenario file without running it");
  validate->add_option("config", config_path, "scenario YAML file")->required();

  app.add_subcommand("list-models", "list model ids and shipped examples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kato::kExitConfig;
  }

  try {
    if (app.got_subcommand("list-models")) return list_models();

    const kato::ScenarioConfig config = kato::parse_scenario(config_path);
    if (app.got_subcommand("validate")) {
      std::cout << "ok: " << config.name << " (" << kato::to_string(config.model) << ", " << config.ladder.size()
                << " ladder points, " << config.lambdas.size() << " lambda values)\n";
      return 0;
    }

    const kato::Format fmt = kato::parse_format(format);
    if (fmt != kato::Format::Json && out_dir.empty()) return fail(kato::kExitConfig, "--format " + format + " needs --out");

    kato::RunOptions options;
    options.threads = threads;
    options.stable_output = stable;
    if (!lambdas.empty()) options.lambdas = lambdas;
    if (!ladder.empty()) options.ladder = std::vector<kato::Index>(ladder.begin(), ladder.end());

    const kato::RunReport report = kato::run(config, options);
    if (out_dir.empty()) {
      std::cout << kato::render_json(report);
    } else {
      for (const std::string& path : kato::emit(report, fmt, out_dir)) std::cerr << "wrote " << path << "\n";
    }
    for (const std::string& err : report.errors) std::cerr << "error: " << err << "\n";
    const int code = kato::exit_code(report);
    std::cerr << config.name << ": verdict "
              << (report.verdict ? kato::to_string(*report.verdict) : "none") << ", expected "
              << kato::to_string(config.expected) << ", exit " << code << "\n";
    return code;
  } catch (const kato::IoError& e) {
    return fail(kato::kExitIo, e.what());
  } catch (const kato::ValidationError& e) {
    return fail(kato::kExitConfig, e.what());
  } catch (const kato::SizeError& e) {
    return fail(kato::kExitPartial, e.what());
  } catch (const std::exception& e) {
    return fail(kato::kExitPartial, e.what());
  }
}
