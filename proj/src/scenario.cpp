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

#include "kato/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace kato {

namespace {

class Reader {
 public:
  Reader(ScenarioConfig& cfg) : cfg_(cfg) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& field, const std::string& what) const {
    std::ostringstream msg;
    msg << cfg_.source;
    if (node.Mark().line >= 0) msg << ":" << node.Mark().line + 1;
    msg << ": field '" << field << "': " << what;
    throw ConfigError(msg.str());
  }

  template <class T>
  T scalar(const YAML::Node& node, const std::string& field, const char* type) const {
    if (!node.IsScalar()) fail(node, field, std::string("expected ") + type);
    try {
      return node.as<T>();
    } catch (const YAML::Exception&) {
      fail(node, field, std::string("expected ") + type + ", got \"" + node.Scalar() + "\"");
    }
  }

  template <class T>
  std::vector<T> list(const YAML::Node& node, const std::string& field, const char* type) const {
    std::vector<T> out;
    if (node.IsScalar()) {
      out.push_back(scalar<T>(node, field, type));
      return out;
    }
    if (!node.IsSequence()) fail(node, field, std::string("expected a list of ") + type);
    for (std::size_t i = 0; i < node.size(); ++i)
      out.push_back(scalar<T>(node[i], field + "[" + std::to_string(i) + "]", type));
    return out;
  }

  RateExpr rate(const YAML::Node& node, const std::string& field) const {
    const std::string text = scalar<std::string>(node, field, "a rate expression");
    try {
      return RateExpr::parse(text);
    } catch (const ValidationError& e) {
      fail(node, field, e.what());
    }
  }

  void check_keys(const YAML::Node& map, const std::string& field, const std::set<std::string>& allowed) const {
    if (!map.IsMap()) fail(map, field, "expected a mapping");
    for (const auto& kv : map) {
      const std::string key = kv.first.as<std::string>();
      if (!allowed.count(key)) fail(kv.first, field.empty() ? key : field + "." + key, "unknown field");
    }
  }

 private:
  ScenarioConfig& cfg_;
};

const std::set<std::string> kTopLevel = {"name",    "model",   "expected",    "rate",      "birth",     "death",
                                         "loss",    "boundary", "sigma",      "ladder",    "lambda",    "n_max",
                                         "tol",     "initial", "diagnostics", "spectral",  "time",      "nonminimal",
                                         "potential"};

void select(DiagnosticSelection& d, const std::string& name, const Reader& r, const YAML::Node& node,
            const std::string& field) {
  if (name == "norm_decay") d.norm_decay = true;
  else if (name == "cesaro") d.cesaro = true;
  else if (name == "dual_power") d.dual_power = true;
  else if (name == "defect") d.defect = true;
  else if (name == "spectral") d.spectral = true;
  else if (name == "conservativity") d.conservativity = true;
  else if (name == "time_defect") d.time_defect = true;
  else if (name == "nonminimal") d.nonminimal = true;
  else if (name == "potential") d.potential = true;
  else
    r.fail(node, field,
           "unknown diagnostic \"" + name +
               "\" (known: norm_decay, cesaro, dual_power, defect, spectral, conservativity, time_defect, "
               "nonminimal, potential)");
}

ScenarioConfig read(const YAML::Node& root, const std::string& source) {
  ScenarioConfig cfg;
  cfg.source = source;
  Reader r(cfg);
  if (!root.IsMap()) {
    std::ostringstream msg;
    msg << source << ": scenario must be a mapping of fields";
    throw ConfigError(msg.str());
  }
  r.check_keys(root, "", kTopLevel);
  for (const auto& kv : root) cfg.lines[kv.first.as<std::string>()] = kv.first.Mark().line + 1;

  if (!root["model"]) r.fail(root, "model", "missing required field");
  try {
    cfg.model = parse_model_id(r.scalar<std::string>(root["model"], "model", "a model id"));
  } catch (const ConfigError&) {
    throw;
  } catch (const ValidationError& e) {
    r.fail(root["model"], "model", e.what());
  }
  cfg.name = root["name"] ? r.scalar<std::string>(root["name"], "name", "a string") : to_string(cfg.model);
  if (root["expected"]) {
    try {
      cfg.expected = parse_expected(r.scalar<std::string>(root["expected"], "expected", "a classification"));
    } catch (const ConfigError&) {
      throw;
    } catch (const ValidationError& e) {
      r.fail(root["expected"], "expected", e.what());
    }
  }
  if (root["rate"]) cfg.birth = r.rate(root["rate"], "rate");
  if (root["birth"]) {
    if (root["rate"]) r.fail(root["birth"], "birth", "give either 'rate' or 'birth', not both");
    cfg.birth = r.rate(root["birth"], "birth");
  }
  if (root["death"]) cfg.death = r.rate(root["death"], "death");
  if (root["loss"]) cfg.loss = r.rate(root["loss"], "loss");
  if (root["boundary"]) {
    const std::string b = r.scalar<std::string>(root["boundary"], "boundary", "absorb|reflect");
    if (b == "absorb") cfg.boundary = Boundary::Absorb;
    else if (b == "reflect") cfg.boundary = Boundary::Reflect;
    else r.fail(root["boundary"], "boundary", "expected absorb or reflect, got \"" + b + "\"");
  }
  if (root["sigma"]) {
    const std::string s = r.scalar<std::string>(root["sigma"], "sigma", "one|phase");
    if (s == "one") cfg.sigma = SigmaChoice::One;
    else if (s == "phase") cfg.sigma = SigmaChoice::Phase;
    else r.fail(root["sigma"], "sigma", "expected one or phase, got \"" + s + "\"");
  }
  if (root["ladder"]) {
    for (long n : r.list<long>(root["ladder"], "ladder", "integers")) cfg.ladder.push_back(static_cast<Index>(n));
  }
  if (root["lambda"]) cfg.lambdas = r.list<double>(root["lambda"], "lambda", "numbers");
  if (root["n_max"]) cfg.n_max = r.scalar<long>(root["n_max"], "n_max", "an integer");
  if (root["tol"]) cfg.tol = r.scalar<double>(root["tol"], "tol", "a number");
  if (root["initial"]) cfg.initial = static_cast<Index>(r.scalar<long>(root["initial"], "initial", "an integer"));

  // Optional sections switch their diagnostic on unless an explicit
  // diagnostics list is given.
  if (root["spectral"]) {
    const YAML::Node s = root["spectral"];
    r.check_keys(s, "spectral", {"ladder"});
    if (s["ladder"])
      for (long n : r.list<long>(s["ladder"], "spectral.ladder", "integers"))
        cfg.spectral_ladder.push_back(static_cast<Index>(n));
    cfg.diagnostics.spectral = true;
  }
  if (root["time"]) {
    const YAML::Node s = root["time"];
    r.check_keys(s, "time", {"t", "n_steps", "truncation"});
    if (s["t"]) cfg.time.t = r.list<double>(s["t"], "time.t", "numbers");
    if (s["n_steps"]) cfg.time.n_steps = r.scalar<long>(s["n_steps"], "time.n_steps", "an integer");
    if (s["truncation"])
      cfg.time.truncation = static_cast<Index>(r.scalar<long>(s["truncation"], "time.truncation", "an integer"));
    cfg.diagnostics.time_defect = true;
  }
  if (root["nonminimal"]) {
    const YAML::Node s = root["nonminimal"];
    r.check_keys(s, "nonminimal", {"u0", "truncation", "samples", "seed"});
    if (s["u0"]) cfg.nonminimal.u0 = static_cast<Index>(r.scalar<long>(s["u0"], "nonminimal.u0", "an integer"));
    if (s["truncation"])
      cfg.nonminimal.truncation =
          static_cast<Index>(r.scalar<long>(s["truncation"], "nonminimal.truncation", "an integer"));
    if (s["samples"]) cfg.nonminimal.samples = r.scalar<int>(s["samples"], "nonminimal.samples", "an integer");
    if (s["seed"]) cfg.nonminimal.seed = r.scalar<unsigned>(s["seed"], "nonminimal.seed", "an integer");
    cfg.diagnostics.nonminimal = true;
  }
  if (root["potential"]) {
    const YAML::Node s = root["potential"];
    if (s.IsScalar()) {
      cfg.potential.k = r.scalar<double>(s, "potential", "a number");
    } else {
      r.check_keys(s, "potential", {"k", "iterations"});
      if (s["k"]) cfg.potential.k = r.scalar<double>(s["k"], "potential.k", "a number");
      if (s["iterations"])
        cfg.potential.iterations = r.scalar<long>(s["iterations"], "potential.iterations", "an integer");
    }
    cfg.diagnostics.potential = true;
  }
  if (root["diagnostics"]) {
    const YAML::Node d = root["diagnostics"];
    if (!d.IsSequence()) r.fail(d, "diagnostics", "expected a list of diagnostic names");
    DiagnosticSelection sel{false, false, false, false, false, false, false, false, false};
    for (std::size_t i = 0; i < d.size(); ++i) {
      const std::string field = "diagnostics[" + std::to_string(i) + "]";
      select(sel, r.scalar<std::string>(d[i], field, "a diagnostic name"), r, d[i], field);
    }
    cfg.diagnostics = sel;
  }
  if (cfg.ladder.empty() && cfg.model == ModelId::AmplitudeDamping) cfg.ladder = {2};
  validate_scenario(cfg);
  return cfg;
}

std::string where(const ScenarioConfig& cfg, const std::string& field) {
  auto it = cfg.lines.find(field);
  std::string out = cfg.source.empty() ? "<config>" : cfg.source;
  if (it != cfg.lines.end()) out += ":" + std::to_string(it->second);
  return out + ": field '" + field + "': ";
}

}  // namespace

ScenarioConfig parse_scenario_text(const std::string& text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    std::ostringstream msg;
    msg << source << ":" << e.mark.line + 1 << ":" << e.mark.column + 1 << ": " << e.msg;
    throw ConfigError(msg.str());
  }
  return read(root, source);
}

ScenarioConfig parse_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read scenario file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str(), path);
}

void validate_scenario(const ScenarioConfig& cfg) {
  auto fail = [&](const std::string& field, const std::string& what) { throw ConfigError(where(cfg, field) + what); };
  if (cfg.ladder.empty()) fail("ladder", "missing required field (list of truncation sizes)");
  for (std::size_t i = 0; i < cfg.ladder.size(); ++i) {
    if (cfg.ladder[i] < 2) fail("ladder", "truncation sizes must be >= 2");
    if (i > 0 && cfg.ladder[i] <= cfg.ladder[i - 1]) fail("ladder", "must be strictly increasing");
  }
  if (cfg.lambdas.empty()) fail("lambda", "needs at least one value");
  for (double l : cfg.lambdas)
    if (!(l > 0.0)) fail("lambda", "values must be > 0");
  if (cfg.n_max < 1) fail("n_max", "must be >= 1");
  if (!(cfg.tol > 0.0)) fail("tol", "must be > 0");
  if (cfg.initial < 0 || cfg.initial >= cfg.ladder.front()) fail("initial", "must index a state of every truncation");

  const Index top = cfg.ladder.back();
  try {
    switch (cfg.model) {
      case ModelId::PureBirth:
        if (cfg.lines.count("death") || cfg.lines.count("loss"))
          fail("model", "pure_birth takes only 'rate'; use birth_death for death or loss rates");
        cfg.birth.evaluate(top, "rate");
        break;
      case ModelId::BirthDeath:
        cfg.birth.evaluate(top, "birth");
        cfg.death.evaluate(top, "death");
        cfg.loss.evaluate(top, "loss");
        break;
      case ModelId::Cascade:
        cfg.birth.evaluate(top, "rate");
        break;
      case ModelId::AmplitudeDamping:
        if (cfg.ladder != std::vector<Index>{2}) fail("ladder", "amplitude_damping is two-level; use [2] or omit");
        break;
      case ModelId::Ssqds:
        if (cfg.ladder.front() < 8) fail("ladder", "ssqds grids need M >= 8");
        break;
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    const std::string field = msg.substr(0, msg.find(':'));
    throw ConfigError(where(cfg, cfg.lines.count(field) ? field : "rate") + msg);
  }

  if (cfg.diagnostics.time_defect) {
    if (cfg.time.n_steps < 1) fail("time", "n_steps must be >= 1");
    for (double t : cfg.time.t)
      if (!(t >= 0.0)) fail("time", "times must be >= 0");
    if (cfg.time.truncation < 2) fail("time", "truncation must be >= 2");
  }
  if (cfg.diagnostics.nonminimal) {
    if (model_mode(cfg.model) != Mode::Sequence) fail("nonminimal", "only available for classical models");
    if (cfg.nonminimal.u0 < 0 || cfg.nonminimal.u0 >= cfg.nonminimal.truncation)
      fail("nonminimal", "u0 must index a state of the truncation");
    if (cfg.nonminimal.samples < 0) fail("nonminimal", "samples must be >= 0");
  }
  if (cfg.diagnostics.potential) {
    if (!(cfg.potential.k >= 0.0)) fail("potential", "K must be >= 0");
    if (cfg.potential.iterations < 0) fail("potential", "iterations must be >= 0");
  }
  for (Index n : cfg.spectral_ladder)
    if (n < 2) fail("spectral", "truncation sizes must be >= 2");
}

LindbladModel build_lindblad_model(const ScenarioConfig& cfg, Index n) {
  switch (cfg.model) {
    case ModelId::AmplitudeDamping: return make_amplitude_damping();
    case ModelId::Cascade: return make_cascade(cfg.birth, n);
    case ModelId::Ssqds: return discretize_ssqds(n, cfg.sigma);
    default: throw ValidationError(std::string(to_string(cfg.model)) + " is not a Lindblad model");
  }
}

GeneratorPair build_generator(const ScenarioConfig& cfg, Index n) {
  switch (cfg.model) {
    case ModelId::PureBirth: return make_pure_birth(cfg.birth, n, cfg.boundary);
    case ModelId::BirthDeath: return make_birth_death(cfg.birth, cfg.death, cfg.loss, n, cfg.boundary);
    default: return build_lindblad_pair(build_lindblad_model(cfg, n));
  }
}

StateVector initial_state(const ScenarioConfig& cfg, const GeneratorPair& gen) {
  return StateVector::basis(gen.mode(), gen.dim(), cfg.initial);
}

}  // namespace kato
