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

#include "kato/model_zoo.hpp"

#include <cmath>

namespace kato {

const char* to_string(ModelId id) {
  switch (id) {
    case ModelId::PureBirth: return "pure_birth";
    case ModelId::BirthDeath: return "birth_death";
    case ModelId::AmplitudeDamping: return "amplitude_damping";
    case ModelId::Cascade: return "cascade";
    case ModelId::Ssqds: return "ssqds";
  }
  return "?";
}

ModelId parse_model_id(const std::string& text) {
  for (ModelId id : {ModelId::PureBirth, ModelId::BirthDeath, ModelId::AmplitudeDamping, ModelId::Cascade,
                     ModelId::Ssqds})
    if (text == to_string(id)) return id;
  throw ValidationError("unknown model id \"" + text +
                        "\" (known: pure_birth, birth_death, amplitude_damping, cascade, ssqds)");
}

Mode model_mode(ModelId id) {
  return id == ModelId::PureBirth || id == ModelId::BirthDeath ? Mode::Sequence : Mode::Matrix;
}

const char* to_string(Expected e) {
  switch (e) {
    case Expected::None: return "none";
    case Expected::Honest: return "Honest";
    case Expected::Dishonest: return "Dishonest";
    case Expected::Qualitative: return "Qualitative";
  }
  return "?";
}

Expected parse_expected(const std::string& text) {
  for (Expected e : {Expected::None, Expected::Honest, Expected::Dishonest, Expected::Qualitative})
    if (text == to_string(e)) return e;
  throw ValidationError("unknown classification \"" + text + "\" (known: Honest, Dishonest, Qualitative, none)");
}

GeneratorPair make_pure_birth(const RateExpr& rate, Index n, Boundary boundary) {
  return make_birth_death(rate, RateExpr(), RateExpr(), n, boundary);
}

GeneratorPair make_birth_death(const RateExpr& birth, const RateExpr& death, const RateExpr& loss, Index n,
                               Boundary boundary) {
  if (n < 1) throw ValidationError("truncation N must be >= 1");
  BirthDeathRates r;
  r.birth = birth.evaluate(n, "birth");
  r.death = death.evaluate(n, "death");
  r.loss = loss.evaluate(n, "loss");
  r.death(0) = 0.0;
  r.boundary = boundary;
  GeneratorPair gen = GeneratorPair::birth_death(std::move(r));
  gen.set_description("birth_death(a=" + birth.text() + ", b=" + death.text() + ", c=" + loss.text() +
                      ", N=" + std::to_string(n) + ")");
  return gen;
}

LindbladModel make_amplitude_damping() {
  ComplexMatrix y = ComplexMatrix::Zero(2, 2);
  y(1, 1) = -0.5;
  ComplexMatrix l = ComplexMatrix::Zero(2, 2);
  l(0, 1) = 1.0;
  return make_lindblad_model(std::move(y), {std::move(l)}, ComplexMatrix(), "amplitude_damping");
}

LindbladModel make_cascade(const RateExpr& rate, Index n) {
  if (n < 2) throw ValidationError("cascade needs N >= 2");
  const RealVector a = rate.evaluate(n, "rate");
  ComplexMatrix y = ComplexMatrix::Zero(n, n), l = ComplexMatrix::Zero(n, n), edge = ComplexMatrix::Zero(n, n);
  for (Index k = 0; k < n; ++k) {
    y(k, k) = -0.5 * a(k);
    if (k + 1 < n) l(k + 1, k) = std::sqrt(a(k));
  }
  edge(n - 1, n - 1) = a(n - 1);
  return make_lindblad_model(std::move(y), {std::move(l)}, std::move(edge),
                             "cascade(" + rate.text() + ", N=" + std::to_string(n) + ")");
}

std::vector<ModelInfo> model_catalog() {
  return {
      {ModelId::PureBirth, "rate, boundary", "pure birth chain on l1, birth rates a_k"},
      {ModelId::BirthDeath, "birth, death, loss, boundary", "birth-death chain with extra loss c_k"},
      {ModelId::AmplitudeDamping, "-", "two-level decay |1> -> |0>, trace preserving"},
      {ModelId::Cascade, "rate", "quantum twin of pure birth on C^N, L e_k = sqrt(a_k) e_{k+1}"},
      {ModelId::Ssqds, "sigma (one|phase)", "periodic grid discretization of L = sigma d/dx, Y = 1/2 |sigma|^2 d2/dx2"},
  };
}

std::vector<CatalogEntry> shipped_examples() {
  return {
      {"quadratic_pure_birth", ModelId::PureBirth, "(k+1)^2", Expected::Dishonest},
      {"linear_pure_birth", ModelId::PureBirth, "k+1", Expected::Honest},
      {"zero_rate", ModelId::PureBirth, "0", Expected::Honest},
      {"constant_rate", ModelId::PureBirth, "1", Expected::Honest},
      {"honest_birth_death", ModelId::BirthDeath, "a=k+1, b=k", Expected::Honest},
      {"lossy_explosive", ModelId::BirthDeath, "a=(k+1)^2, c=0.1", Expected::Dishonest},
      {"amplitude_damping", ModelId::AmplitudeDamping, "-", Expected::Honest},
      {"quadratic_cascade", ModelId::Cascade, "(k+1)^2", Expected::Dishonest},
      {"ssqds_one", ModelId::Ssqds, "sigma=1", Expected::Qualitative},
      {"ssqds_phase", ModelId::Ssqds, "sigma=-i e^{ix}", Expected::Qualitative},
  };
}

}  // namespace kato
