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

#include <set>

#include "kato/honesty.hpp"
#include "kato/kato_engine.hpp"
#include "kato/model_zoo.hpp"
#include "oracles.hpp"

using namespace kato;
using Catch::Approx;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("rate expressions evaluate with the usual precedence") {
  CHECK(RateExpr::parse("(k+1)^2")(3.0) == 16.0);
  CHECK(RateExpr::parse("k+1")(4.0) == 5.0);
  CHECK(RateExpr::parse("2*k+3*k^2")(2.0) == 16.0);
  CHECK(RateExpr::parse("2^3^2")(0.0) == 512.0);
  CHECK(RateExpr::parse("-k^2")(3.0) == -9.0);
  CHECK(RateExpr::parse("10 - k / 2")(4.0) == 8.0);
  CHECK(RateExpr::parse("0.5e1")(0.0) == 5.0);
  CHECK(RateExpr::parse(" ( k ) ")(7.0) == 7.0);
  CHECK(RateExpr()(3.0) == 0.0);
  CHECK(RateExpr::constant(0.25)(9.0) == 0.25);
  CHECK(RateExpr::parse("k+1").text() == "k+1");
}

TEST_CASE("malformed rate expressions name the position") {
  CHECK_THROWS_WITH(RateExpr::parse("k+"), ContainsSubstring("position 2"));
  CHECK_THROWS_WITH(RateExpr::parse("(k+1"), ContainsSubstring("missing ')'"));
  CHECK_THROWS_WITH(RateExpr::parse("k$1"), ContainsSubstring("position 1"));
  CHECK_THROWS_AS(RateExpr::parse(""), ValidationError);
  CHECK_THROWS_AS(RateExpr::parse("x"), ValidationError);
}

TEST_CASE("evaluation rejects negative and non-finite rates") {
  CHECK_THROWS_WITH(RateExpr::parse("-k").evaluate(5, "birth"),
                    ContainsSubstring("birth") && ContainsSubstring("k=1"));
  CHECK_THROWS_AS(RateExpr::parse("1/k").evaluate(3, "death"), ValidationError);
  const RealVector v = RateExpr::parse("k^2").evaluate(4, "rate");
  CHECK(v(3) == 9.0);
}

TEST_CASE("model ids and classifications") {
  CHECK(parse_model_id("pure_birth") == ModelId::PureBirth);
  CHECK(parse_model_id("ssqds") == ModelId::Ssqds);
  CHECK_THROWS_WITH(parse_model_id("fragmentation"), ContainsSubstring("pure_birth"));
  CHECK(model_mode(ModelId::Cascade) == Mode::Matrix);
  CHECK(model_mode(ModelId::BirthDeath) == Mode::Sequence);
  CHECK(parse_expected("Dishonest") == Expected::Dishonest);
  CHECK_THROWS_AS(parse_expected("maybe"), ValidationError);
  for (ModelId id : {ModelId::PureBirth, ModelId::BirthDeath, ModelId::AmplitudeDamping, ModelId::Cascade,
                     ModelId::Ssqds})
    CHECK(parse_model_id(to_string(id)) == id);
}

TEST_CASE("catalog lists every model once") {
  std::set<ModelId> ids;
  for (const ModelInfo& m : model_catalog()) CHECK(ids.insert(m.id).second);
  CHECK(ids.size() == 5);
  for (const CatalogEntry& e : shipped_examples()) CHECK_FALSE(e.name.empty());
}

TEST_CASE("pure birth constructor") {
  const GeneratorPair g = make_pure_birth(RateExpr::parse("(k+1)^2"), 5);
  CHECK(g.mode() == Mode::Sequence);
  CHECK(g.dim() == 5);
  CHECK(g.diagonal()(4) == 25.0);
  const RealVector be0 = g.b_apply(RealVector(RealVector::Unit(5, 0)));
  CHECK(be0(1) == 1.0);
  CHECK(be0.sum() == 1.0);
  CHECK(birth_death_balance_residual(g) <= 1e-15);
  CHECK_THROWS_AS(make_pure_birth(RateExpr::parse("-k"), 5), ValidationError);
  CHECK_THROWS_AS(make_pure_birth(RateExpr::parse("1"), 0), ValidationError);
}

TEST_CASE("birth-death constructor") {
  const GeneratorPair g =
      make_birth_death(RateExpr::parse("k+1"), RateExpr::parse("k"), RateExpr::parse("0.5"), 10);
  CHECK(g.diagonal()(3) == Approx(4.0 + 3.0 + 0.5));
  const RealVector col = g.b_apply(RealVector(RealVector::Unit(10, 3)));
  CHECK(col(4) == 4.0);
  CHECK(col(2) == 3.0);
  // <Psi, (A+B) e_k> = -c_k away from the edge.
  const Eigen::MatrixXd dense = oracle::dense_generator(g);
  for (Index k = 0; k + 1 < 10; ++k) CHECK(dense.col(k).sum() == Approx(-0.5));

  const GeneratorPair id = make_birth_death(RateExpr(), RateExpr(), RateExpr(), 6);
  const StateVector u = StateVector::basis(Mode::Sequence, 6, 2);
  CHECK((semigroup_apply(id, 2.0, u, 10).seq() - u.seq()).norm() == 0.0);
  CHECK_THROWS_AS(make_birth_death(RateExpr::parse("1"), RateExpr::parse("-1"), RateExpr(), 4), ValidationError);
}

TEST_CASE("zero rate gives identity dynamics") {
  const GeneratorPair g = make_pure_birth(RateExpr::parse("0"), 8);
  const StateVector u = StateVector::basis(Mode::Sequence, 8, 3);
  CHECK((semigroup_apply(g, 3.0, u, 20).seq() - u.seq()).norm() == 0.0);
}

TEST_CASE("quantum constructors") {
  const LindbladModel ad = make_amplitude_damping();
  CHECK(ad.dim() == 2);
  CHECK(ad.jumps.size() == 1);
  CHECK(ad.equality_case);

  const LindbladModel c = make_cascade(RateExpr::parse("(k+1)^2"), 6);
  CHECK(c.dim() == 6);
  CHECK(c.jumps.front()(2, 1).real() == Approx(2.0));
  CHECK(c.y(5, 5).real() == Approx(-18.0));
  CHECK(c.edge(5, 5).real() == Approx(36.0));
  CHECK_THROWS_AS(make_cascade(RateExpr::parse("-1"), 6), ValidationError);
  CHECK_THROWS_AS(make_cascade(RateExpr::parse("1"), 1), ValidationError);
}

TEST_CASE("shipped classical examples reach their classification") {
  const StateBuilder first = [](const GeneratorPair& g) { return StateVector::basis(g.mode(), g.dim(), 0); };
  DiagnosticOptions opt;
  const RateExpr sq = RateExpr::parse("(k+1)^2"), lin = RateExpr::parse("k+1");
  CHECK(run_ladder([&](Index n) { return make_pure_birth(sq, n); }, first, {2000, 10000}, 1.0, opt).verdict ==
        Verdict::Dishonest);
  CHECK(run_ladder([&](Index n) { return make_pure_birth(lin, n); }, first, {2000, 10000}, 1.0, opt).verdict ==
        Verdict::Honest);
  const RateExpr death = RateExpr::parse("k"), loss = RateExpr::parse("0.1");
  CHECK(run_ladder([&](Index n) { return make_birth_death(lin, death, RateExpr(), n); }, first, {2000, 8000}, 1.0,
                   opt)
            .verdict == Verdict::Honest);
  CHECK(run_ladder([&](Index n) { return make_birth_death(sq, RateExpr(), loss, n); }, first, {2000, 10000}, 1.0,
                   opt)
            .verdict == Verdict::Dishonest);
}

TEST_CASE("lossy explosive chain loses more than its c-loss") {
  const GeneratorPair g = make_birth_death(RateExpr::parse("(k+1)^2"), RateExpr(), RateExpr::parse("0.1"), 200);
  const TimeDefectResult r = time_defect(g, 1.0, StateVector::basis(Mode::Sequence, 200, 0), 200);
  CHECK(r.defect < -0.1);
}
