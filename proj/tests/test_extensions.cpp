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

#include <random>

#include "kato/extensions.hpp"
#include "kato/honesty.hpp"
#include "kato/lindblad.hpp"
#include "kato/model_zoo.hpp"
#include "oracles.hpp"

using namespace kato;
using Catch::Approx;

namespace {

constexpr Index kN = 1000;

GeneratorPair birth(const char* rate, Index n, Boundary b = Boundary::Absorb) {
  return make_pure_birth(RateExpr::parse(rate), n, b);
}
StateVector e(Index k, Index n = kN) { return StateVector::basis(Mode::Sequence, n, k); }
double square(double k) { return (k + 1.0) * (k + 1.0); }

std::vector<StateVector> positive_samples(Index n, int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::vector<StateVector> out;
  for (int i = 0; i < count; ++i) {
    RealVector v = oracle::random_positive(n, rng);
    out.push_back(StateVector::sequence(v / v.sum()));
  }
  return out;
}

StateVector constant(Index n, double k) { return StateVector::sequence(RealVector::Constant(n, k)); }

}  // namespace

TEST_CASE("alpha on the explosive chain") {
  const NonMinimalFamily fam(birth("(k+1)^2", kN), e(0));
  const double p = oracle::partial_product(square, 1.0, kN);
  CHECK(fam.delta(1.0, e(0)) == Approx(p).margin(1e-10));
  CHECK(fam.alpha(1.0, e(0)) == Approx(p / (1.0 - p)).margin(1e-9));
  CHECK(fam.alpha(1.0, e(0)) == Approx(0.373681).margin(1e-3));
  CHECK_FALSE(fam.degenerate(1.0));
}

TEST_CASE("the extension with u0 = e0 conserves mass on e0") {
  const NonMinimalFamily fam(birth("(k+1)^2", kN), e(0));
  CHECK(fam.resolvent(1.0, e(0)).norm() == Approx(1.0).margin(1e-9));
  CHECK(minimal_resolvent(fam.generator(), 1.0, e(0)).value.norm() < 0.75);
}

TEST_CASE("alpha is linear and vanishes at zero") {
  const NonMinimalFamily fam(birth("(k+1)^2", kN), e(0));
  CHECK(fam.alpha(1.0, StateVector::zeros(Mode::Sequence, kN)) == 0.0);
  const auto s = positive_samples(kN, 2, 3);
  const double lhs = fam.alpha(1.0, s[0] + s[1] * 2.0);
  CHECK(lhs == Approx(fam.alpha(1.0, s[0]) + 2.0 * fam.alpha(1.0, s[1])).margin(1e-12));
}

TEST_CASE("extension checks on random positive samples") {
  const NonMinimalFamily fam(birth("(k+1)^2", kN), e(0));
  const ExtensionCheck c = verify_extension_family(fam, 1.0, positive_samples(kN, 30, 11));
  for (const auto& v : c.violations) UNSCOPED_INFO(v);
  CHECK(c.ok());
  CHECK(c.worst_mass_ratio <= 1.0 + 1e-9);
  CHECK_FALSE(c.degenerate);

  // Dominance on e0 coordinatewise.
  const RealVector lo = minimal_resolvent(fam.generator(), 1.0, e(0)).value.seq();
  const RealVector hi = fam.resolvent(1.0, e(0)).seq();
  CHECK((hi - lo).minCoeff() >= -1e-15);
}

TEST_CASE("distinct u0 give distinct resolvents") {
  const GeneratorPair g = birth("(k+1)^2", kN);
  const NonMinimalFamily a(g, e(0));
  const NonMinimalFamily b(g, e(5));
  const RealVector ra = a.resolvent(1.0, e(0)).seq();
  const RealVector rb = b.resolvent(1.0, e(0)).seq();
  CHECK((ra - rb).cwiseAbs().maxCoeff() > 1e-2);
  CHECK(a.alpha(1.0, e(0)) != Approx(b.alpha(1.0, e(0))));
}

TEST_CASE("conservative truncations collapse the family") {
  const NonMinimalFamily fam(birth("(k+1)^2", 200, Boundary::Reflect), e(0, 200));
  CHECK(fam.degenerate(1.0));
  const RealVector lo = minimal_resolvent(fam.generator(), 1.0, e(3, 200)).value.seq();
  CHECK((fam.resolvent(1.0, e(3, 200)).seq() - lo).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("u0 must be a positive state of norm at most one") {
  const GeneratorPair g = birth("(k+1)^2", 20);
  CHECK_THROWS_AS(NonMinimalFamily(g, e(0, 20) * 2.0), ValidationError);
  CHECK_THROWS_AS(NonMinimalFamily(g, e(0, 20) * -1.0), ValidationError);
  CHECK_THROWS_AS(NonMinimalFamily(g, StateVector::zeros(Mode::Sequence, 20)), ValidationError);
  CHECK_THROWS_AS(NonMinimalFamily(g, e(0, 21)), ValidationError);
}

TEST_CASE("the extension semigroup is a positive contraction") {
  const NonMinimalFamily fam(birth("(k+1)^2", 200), e(0, 200));
  const StateVector v = fam.semigroup_apply(1.0, e(0, 200), 50);
  CHECK(is_positive(v));
  CHECK(v.norm() <= 1.0 + 1e-9);
  CHECK(v.norm() > semigroup_apply(fam.generator(), 1.0, e(0, 200), 50).norm());
}

TEST_CASE("a constant potential keeps the verdicts") {
  DiagnosticOptions opt;
  const StateBuilder first = [](const GeneratorPair& g) { return StateVector::basis(g.mode(), g.dim(), 0); };
  auto wrapped = [](const char* rate) -> GeneratorBuilder {
    const RateExpr r = RateExpr::parse(rate);
    return [r](Index n) { return perturb_with_potential(make_pure_birth(r, n), constant(n, 0.5)); };
  };
  const HonestyReport q = run_ladder(wrapped("(k+1)^2"), first, {2000, 10000}, 1.0, opt);
  CHECK(q.verdict == Verdict::Dishonest);
  const double limit = oracle::partial_product([](double k) { return square(k); }, 1.5, 10000);
  CHECK(q.points.back().norm_limit->value == Approx(limit).margin(1e-3));
  const HonestyReport l = run_ladder(wrapped("k+1"), first, {2000, 10000}, 1.0, opt);
  CHECK(l.verdict == Verdict::Honest);
}

TEST_CASE("potentials dominate the resolvent and its iterates") {
  const GeneratorPair base = birth("(k+1)^2", 500);
  const GeneratorPair pert = perturb_with_potential(base, constant(500, 0.5));
  CHECK(pert.kind() == GeneratorKind::PotentialWrapped);
  const auto samples = positive_samples(500, 10, 5);
  CHECK(resolvent_domination_violation(base, pert, 1.0, samples) <= 1e-12);
  for (const StateVector& u : samples) CHECK(iterated_domination_violation(base, pert, 1.0, u, 50) <= 1e-12);

  const GeneratorPair ad = build_lindblad_pair(make_amplitude_damping());
  const GeneratorPair adk = perturb_with_potential(ad, StateVector::matrix(ComplexMatrix::Identity(2, 2) * 0.5));
  const StateVector rho = StateVector::basis(Mode::Matrix, 2, 1);
  CHECK(resolvent_domination_violation(ad, adk, 1.0, {rho}) <= 1e-12);
  CHECK(iterated_domination_violation(ad, adk, 1.0, rho, 50) <= 1e-12);
}

TEST_CASE("a zero potential changes nothing") {
  const GeneratorPair base = birth("(k+1)^2", 100);
  const GeneratorPair pert = perturb_with_potential(base, constant(100, 0.0));
  const StateVector u = positive_samples(100, 1, 9).front();
  CHECK((minimal_resolvent(base, 1.0, u).value.seq() - minimal_resolvent(pert, 1.0, u).value.seq())
            .cwiseAbs()
            .maxCoeff() == 0.0);
}

TEST_CASE("negative potentials are rejected") {
  const GeneratorPair base = birth("k+1", 10);
  CHECK_THROWS_AS(perturb_with_potential(base, constant(10, -0.1)), ValidationError);
  CHECK_THROWS_AS(perturb_with_potential(base, constant(9, 0.1)), ValidationError);
  const GeneratorPair ad = build_lindblad_pair(make_amplitude_damping());
  CHECK_THROWS_AS(perturb_with_potential(ad, StateVector::matrix(-ComplexMatrix::Identity(2, 2))), ValidationError);
}
