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

#include "kato/emit.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>

namespace kato {

using nlohmann::ordered_json;

namespace {

ordered_json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

ordered_json series_json(const Series& s) {
  ordered_json values = ordered_json::array();
  for (double v : s.values) values.push_back(number(v));
  return {{"first_n", s.first_n}, {"values", std::move(values)}};
}

ordered_json limit_json(const std::optional<LimitEstimate>& e) {
  if (!e) return nullptr;
  return {{"value", number(e->value)}, {"residual", number(e->residual)}, {"model", e->model}};
}

ordered_json opt(const std::optional<double>& x) { return x ? number(*x) : ordered_json(nullptr); }

std::string lambda_tag(double lambda) { return "lambda" + format_double(lambda); }

ordered_json point_json(const LadderPoint& p) {
  ordered_json j;
  j["n"] = p.n;
  j["lambda"] = p.lambda;
  j["horizon"] = p.horizon;
  j["truncation_edge"] = p.truncation_edge;
  if (p.norm_decay) j["norm_decay"] = {{"limit", limit_json(p.norm_limit)}, {"series", series_json(*p.norm_decay)}};
  if (p.cesaro) j["cesaro"] = {{"limit", limit_json(p.cesaro_limit)}, {"series", series_json(*p.cesaro)}};
  if (!p.dual_power.empty()) {
    ordered_json probes = ordered_json::array();
    for (std::size_t i = 0; i < p.dual_power.size(); ++i)
      probes.push_back({{"probe", p.dual_power[i].probe.label()},
                        {"horizon", p.dual_power[i].horizon},
                        {"in_verdict", static_cast<bool>(p.dual_in_verdict[i])},
                        {"limit", limit_json(p.dual_limits[i])},
                        {"series", series_json(p.dual_power[i].series)}});
    j["dual_power"] = std::move(probes);
  }
  if (p.defect) {
    ordered_json subs = ordered_json::array();
    for (const auto& [n, d] : p.defect_subtruncations) subs.push_back({{"n", n}, {"defect", number(d)}});
    j["defect"] = {{"raw", opt(p.defect_raw)},
                   {"estimate", limit_json(p.defect)},
                   {"subtruncations", std::move(subs)},
                   {"converged", p.defect_converged}};
    j["functional_values"] = {{"a0", opt(p.a0)}, {"abar", opt(p.abar)}, {"defect", opt(p.defect_raw)}};
  }
  if (p.spectral_margin) j["spectral_margin"] = number(*p.spectral_margin);
  j["evidence"] = p.evidence;
  return j;
}

ordered_json honesty_json(const HonestyReport& r) {
  ordered_json points = ordered_json::array();
  for (const LadderPoint& p : r.points) points.push_back(point_json(p));
  return {{"lambda", r.lambda}, {"verdict", to_string(r.verdict)}, {"evidence", r.evidence}, {"points", points}};
}

ordered_json scenario_json(const ScenarioConfig& c, const RunReport& r) {
  ordered_json diag = ordered_json::array();
  const DiagnosticSelection& d = c.diagnostics;
  const std::pair<const char*, bool> flags[] = {
      {"norm_decay", d.norm_decay},     {"cesaro", d.cesaro},           {"dual_power", d.dual_power},
      {"defect", d.defect},             {"spectral", d.spectral},       {"conservativity", d.conservativity},
      {"time_defect", d.time_defect},   {"nonminimal", d.nonminimal},   {"potential", d.potential}};
  for (const auto& [name, on] : flags)
    if (on) diag.push_back(name);
  ordered_json j;
  j["name"] = c.name;
  j["model"] = to_string(c.model);
  j["expected"] = to_string(c.expected);
  switch (c.model) {
    case ModelId::PureBirth:
    case ModelId::Cascade:
      j["rate"] = c.birth.text();
      break;
    case ModelId::BirthDeath:
      j["birth"] = c.birth.text();
      j["death"] = c.death.text();
      j["loss"] = c.loss.text();
      break;
    case ModelId::Ssqds:
      j["sigma"] = to_string(c.sigma);
      break;
    case ModelId::AmplitudeDamping:
      break;
  }
  if (model_mode(c.model) == Mode::Sequence) j["boundary"] = to_string(c.boundary);
  j["ladder"] = r.ladder;
  j["lambda"] = r.lambdas;
  j["n_max"] = c.n_max;
  j["tol"] = c.tol;
  j["initial"] = c.initial;
  j["diagnostics"] = std::move(diag);
  if (d.spectral) j["spectral"] = {{"ladder", c.spectral_ladder}};
  if (d.time_defect)
    j["time"] = {{"t", c.time.t}, {"n_steps", c.time.n_steps}, {"truncation", c.time.truncation}};
  if (d.nonminimal)
    j["nonminimal"] = {{"u0", c.nonminimal.u0},
                       {"truncation", c.nonminimal.truncation},
                       {"samples", c.nonminimal.samples},
                       {"seed", c.nonminimal.seed}};
  if (d.potential) j["potential"] = {{"k", c.potential.k}, {"iterations", c.potential.iterations}};
  return j;
}

std::string file_stem(const std::string& name) {
  std::string out = name.empty() ? "report" : name;
  for (char& c : out)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_' && c != '.') c = '_';
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.close();
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace

Format parse_format(const std::string& text) {
  if (text == "json") return Format::Json;
  if (text == "csv") return Format::Csv;
  if (text == "plotdata") return Format::Plotdata;
  throw ValidationError("unknown format \"" + text + "\" (expected json, csv or plotdata)");
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

ordered_json to_json(const RunReport& r) {
  ordered_json j;
  j["tool"] = {{"name", "katosg"}, {"version", tool_version()}};
  j["scenario"] = scenario_json(r.config, r);

  ordered_json per_lambda = ordered_json::array();
  for (const HonestyReport& h : r.honesty) per_lambda.push_back({{"lambda", h.lambda}, {"verdict", to_string(h.verdict)}});
  j["summary"] = {{"verdict", r.verdict ? ordered_json(to_string(*r.verdict)) : ordered_json(nullptr)},
                  {"expected", to_string(r.config.expected)},
                  {"exit_code", exit_code(r)},
                  {"partial", r.partial},
                  {"per_lambda", std::move(per_lambda)},
                  {"evidence", r.evidence}};

  ordered_json honesty = ordered_json::array();
  for (const HonestyReport& h : r.honesty) honesty.push_back(honesty_json(h));
  j["honesty"] = std::move(honesty);

  if (!r.time_defect.empty()) {
    ordered_json a = ordered_json::array();
    for (const TimeDefectEntry& e : r.time_defect)
      a.push_back({{"t", e.t},
                   {"lambda", e.lambda},
                   {"n", e.n},
                   {"n_steps", e.n_steps},
                   {"defect", number(e.result.defect)},
                   {"norm_change", number(e.result.norm_change)},
                   {"abar_integral", number(e.result.abar_integral)},
                   {"a0_integral", number(e.result.a0_integral)},
                   {"a0_residual", number(e.result.a0_residual)},
                   {"converged", e.result.converged}});
    j["time_defect"] = std::move(a);
  }
  if (!r.nonminimal.empty()) {
    ordered_json a = ordered_json::array();
    for (const NonMinimalEntry& e : r.nonminimal)
      a.push_back({{"lambda", e.lambda},
                   {"n", e.n},
                   {"u0", e.u0},
                   {"delta_u", number(e.delta_u)},
                   {"delta_u0", number(e.delta_u0)},
                   {"alpha", number(e.alpha)},
                   {"degenerate", e.degenerate},
                   {"distinct_u0_gap", number(e.distinct_u0_gap)},
                   {"checks",
                    {{"substochastic", e.check.substochastic},
                     {"resolvent_identity", e.check.resolvent_identity},
                     {"extension", e.check.extension},
                     {"minimal_dominance", e.check.minimal_dominance},
                     {"worst_mass_ratio", number(e.check.worst_mass_ratio)},
                     {"worst_identity_residual", number(e.check.worst_identity_residual)},
                     {"worst_extension_residual", number(e.check.worst_extension_residual)},
                     {"worst_dominance_violation", number(e.check.worst_dominance_violation)},
                     {"violations", e.check.violations}}}});
    j["nonminimal"] = std::move(a);
  }
  if (!r.potential.empty()) {
    ordered_json a = ordered_json::array();
    for (const PotentialEntry& e : r.potential)
      a.push_back({{"lambda", e.lambda},
                   {"k", e.k},
                   {"verdict", e.report.points.empty() ? ordered_json(nullptr) : ordered_json(to_string(e.report.verdict))},
                   {"resolvent_domination_violation", number(e.resolvent_violation)},
                   {"iterated_domination_violation", number(e.iterated_violation)},
                   {"iterations", e.iterations},
                   {"honesty", honesty_json(e.report)}});
    j["potential"] = std::move(a);
  }
  if (!r.conservativity.empty()) {
    ordered_json a = ordered_json::array();
    for (const ConservativityEntry& e : r.conservativity) {
      ordered_json probes = ordered_json::array();
      for (const Series& s : e.iterates.probes) probes.push_back(series_json(s));
      ordered_json item = {{"n", e.n},
                           {"lambda", e.lambda},
                           {"equality_case", e.equality_case},
                           {"correction", number(e.correction)},
                           {"min_eigenvalue", series_json(e.iterates.min_eigenvalue)},
                           {"trace", series_json(e.iterates.trace)},
                           {"probes", std::move(probes)},
                           {"probe_limit", limit_json(e.probe_limit)}};
      if (e.indicator) {
        item["indicator"] = number(*e.indicator);
        item["indicator_steps"] = e.indicator_steps;
      }
      a.push_back(std::move(item));
    }
    j["conservativity"] = std::move(a);
  }
  if (!r.spectral.empty()) {
    ordered_json a = ordered_json::array();
    for (const SpectralEntry& e : r.spectral)
      a.push_back({{"n", e.n}, {"lambda", e.lambda}, {"margin", opt(e.margin)}, {"note", e.note}});
    j["spectral"] = std::move(a);
  }
  j["errors"] = r.errors;
  if (!r.stable_output) {
    ordered_json cells = ordered_json::array();
    for (const CellTiming& t : r.timing) cells.push_back({{"cell", t.cell}, {"seconds", t.seconds}});
    j["timing"] = {{"threads", r.threads}, {"elapsed_seconds", r.elapsed_seconds}, {"cells", std::move(cells)}};
  }
  return j;
}

std::string render_json(const RunReport& report) { return to_json(report).dump(2) + "\n"; }

std::vector<NamedSeries> collect_series(const RunReport& r) {
  std::vector<NamedSeries> out;
  auto add_points = [&](const std::string& prefix, const HonestyReport& h) {
    for (const LadderPoint& p : h.points) {
      const std::string stem = prefix + lambda_tag(p.lambda) + "_N" + std::to_string(p.n) + "_";
      if (p.norm_decay) out.push_back({stem + "norm_decay", *p.norm_decay});
      if (p.cesaro) out.push_back({stem + "cesaro", *p.cesaro});
      for (const ProbeSeries& ps : p.dual_power) out.push_back({stem + "dual_" + ps.probe.label(), ps.series});
    }
  };
  for (const HonestyReport& h : r.honesty) add_points("", h);
  for (const PotentialEntry& e : r.potential) add_points("potential_", e.report);
  for (const ConservativityEntry& e : r.conservativity) {
    const std::string stem = "conservativity_" + lambda_tag(e.lambda) + "_N" + std::to_string(e.n) + "_";
    out.push_back({stem + "min_eigenvalue", e.iterates.min_eigenvalue});
    out.push_back({stem + "trace", e.iterates.trace});
    for (std::size_t i = 0; i < e.iterates.probes.size(); ++i)
      out.push_back({stem + "probe" + std::to_string(i), e.iterates.probes[i]});
  }
  return out;
}

std::string csv_text(const Series& s) {
  std::string out = "n,value\n";
  for (std::size_t i = 0; i < s.values.size(); ++i)
    out += std::to_string(s.first_n + static_cast<long>(i)) + "," + format_double(s.values[i]) + "\n";
  return out;
}

std::string plot_text(const Series& s, const std::string& title) {
  std::string out = "# " + title + "\n# n value\n";
  for (std::size_t i = 0; i < s.values.size(); ++i)
    out += std::to_string(s.first_n + static_cast<long>(i)) + " " + format_double(s.values[i]) + "\n";
  return out;
}

std::vector<std::string> emit(const RunReport& report, Format format, const std::string& out_dir) {
  namespace fs = std::filesystem;
  const fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());

  std::vector<std::string> written;
  if (format == Format::Json) {
    const fs::path path = dir / (file_stem(report.config.name) + ".json");
    write_file(path, render_json(report));
    written.push_back(path.string());
    return written;
  }
  for (const NamedSeries& ns : collect_series(report)) {
    const std::string stem = file_stem(report.config.name) + "_" + ns.name;
    const fs::path path = dir / (stem + (format == Format::Csv ? ".csv" : ".dat"));
    write_file(path, format == Format::Csv ? csv_text(ns.series) : plot_text(ns.series, stem));
    written.push_back(path.string());
  }
  return written;
}

}  // namespace kato
