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

#include "kato/lindblad.hpp"
#include "kato/operators.hpp"
#include "kato/rate_expr.hpp"

namespace kato {

enum class ModelId { PureBirth, BirthDeath, AmplitudeDamping, Cascade, Ssqds };

const char* to_string(ModelId id);
/// Throws ValidationError listing the known ids.
ModelId parse_model_id(const std::string& text);
/// Sequence for the classical chains, Matrix for the Lindblad models.
Mode model_mode(ModelId id);

enum class Expected { None, Honest, Dishonest, Qualitative };

const char* to_string(Expected e);
Expected parse_expected(const std::string& text);

/// A = diag(-a_k), B = birth subdiagonal.
GeneratorPair make_pure_birth(const RateExpr& rate, Index n, Boundary boundary = Boundary::Absorb);

/// A = diag(-(a_k + b_k + c_k)), B = birth subdiagonal + death superdiagonal.
GeneratorPair make_birth_death(const RateExpr& birth, const RateExpr& death, const RateExpr& loss, Index n,
                               Boundary boundary = Boundary::Absorb);

/// Two-level decay: Y = -1/2 |1><1|, L = |0><1|.
LindbladModel make_amplitude_damping();

/// Quantum pure birth on C^N: L e_k = sqrt(a_k) e_{k+1}, Y = -1/2 sum a_k |k><k|.
/// The jump out of level N-1 is the truncation-edge outflow.
LindbladModel make_cascade(const RateExpr& rate, Index n);

struct ModelInfo {
  ModelId id;
  std::string parameters;
  std::string description;
};

std::vector<ModelInfo> model_catalog();

/// Shipped example instances with their declared classification.
struct CatalogEntry {
  std::string name;
  ModelId id;
  std::string rate;
  Expected expected;
};

std::vector<CatalogEntry> shipped_examples();

}  // namespace kato
