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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kato/honesty.hpp"
#include "kato/lindblad.hpp"
#include "kato/model_zoo.hpp"
#include "kato/rate_expr.hpp"

namespace kato {

/// Schema or content problem in a scenario file; the message carries the
/// field path and line.
class ConfigError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

struct DiagnosticSelection {
  bool norm_decay = true;
  bool cesaro = true;
  bool dual_power = true;
  bool defect = true;
  bool spectral = false;
  bool conservativity = false;
  bool time_defect = false;
  bool nonminimal = false;
  bool potential = false;

  bool any() const {
    return norm_decay || cesaro || dual_power || defect || spectral || conservativity || time_defect || nonminimal ||
           potential;
  }
};

struct TimeSettings {
  std::vector<double> t{1.0};
  long n_steps = 100;
  Index truncation = 200;
};

struct NonMinimalSettings {
  Index u0 = 0;
  Index truncation = 2000;
  int samples = 20;
  unsigned seed = 7;
};

struct PotentialSettings {
  double k = 0.5;
  long iterations = 50;
};

struct ScenarioConfig {
  std::string name;
  ModelId model = ModelId::PureBirth;
  Expected expected = Expected::None;
  RateExpr birth;  // "rate" for pure_birth and cascade
  RateExpr death;
  RateExpr loss;
  Boundary boundary = Boundary::Absorb;
  SigmaChoice sigma = SigmaChoice::One;
  std::vector<Index> ladder;
  std::vector<double> lambdas{1.0};
  long n_max = 10000;
  double tol = 1e-12;
  Index initial = 0;
  DiagnosticSelection diagnostics;
  std::vector<Index> spectral_ladder;
  TimeSettings time;
  NonMinimalSettings nonminimal;
  PotentialSettings potential;

  /// Where each top-level field was read from, for error messages.
  std::string source;
  std::map<std::string, int> lines;
};

/// Reads a YAML scenario. Defaults: lambda = [1.0], tol = 1e-12,
/// n_max = 10^4. Throws ConfigError (schema) or std::runtime_error (IO).
ScenarioConfig parse_scenario(const std::string& path);
ScenarioConfig parse_scenario_text(const std::string& text, const std::string& source = "<string>");

/// Cross-field validation: ladder strictly increasing, lambda > 0, rates
/// nonnegative on 0..max(N)-1, model-specific limits.
void validate_scenario(const ScenarioConfig& config);

/// Generator at truncation N (grid size M for ssqds; ignored for
/// amplitude damping).
GeneratorPair build_generator(const ScenarioConfig& config, Index n);
/// Only for Lindblad models.
LindbladModel build_lindblad_model(const ScenarioConfig& config, Index n);
/// e_j or |j><j| with j = config.initial.
StateVector initial_state(const ScenarioConfig& config, const GeneratorPair& gen);

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kato
