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

#include "kato/honesty.hpp"
#include "kato/lindblad.hpp"
#include "kato/model_zoo.hpp"
#include "oracles.hpp"

using namespace kato;
using Catch::Approx;

namespace {

GeneratorPair birth(const char* rate, Index n) { return make_pure_birth(RateExpr::parse(rate), n); }
StateVector e0(Index n) { return StateVector::basis(Mode::Sequence, n, 0); }
double square(double k) { return (k + 1.0) * (k + 1.0); }

GeneratorBuilder builder(const char* rate) {
  const RateExpr r = RateExpr::parse(rate);
  return [r](Index n) { return make_pure_birth(r, n); };
}
const StateBuilder first = [](const GeneratorPair& g) { return StateVector::basis(g.mode(), g.dim(), 0); };

}  // namespace

TEST_CASE("norm decay of the quadratic chain") {
  const Series s = norm_decay_sequence(birth("(k+1)^2", 2000), 1.0, e0(2000), 1999);
  CHECK(s.first_n == 1);
  CHECK(s.at(1) == Approx(0.5).epsilon(1e-15));
  CHECK(s.at(2) == Approx(0.4).epsilon(1e-15));
  CHECK(s.at(3) == Approx(0.36).epsilon(1e-15));
  for (long n : {10L, 100L, 1999L}) CHECK(s.at(n) == Approx(oracle::partial_product(square, 1.0, n)).epsilon(1e-12));
  for (std::size_t i = 1; i < s.values.size(); ++i) CHECK(s.values[i] <= s.values[i - 1]);
}

TEST_CASE("norm decay of the linear chain telescopes") {
  const Series s = norm_decay_sequence(birth("k+1", 1000), 1.0, e0(1000), 999);
  CHECK(s.at(3) == Approx(0.25));
  CHECK(s.at(999) == Approx(1.0 / 1000.0).epsilon(1e-9));
}

TEST_CASE("B = 0 kills the iterates") {
  const GeneratorPair g = birth("0", 10);
  const Series s = norm_decay_sequence(g, 1.0, e0(10), 5);
  for (double v : s.values) CHECK(v == 0.0);
  const Series c = cesaro_sequence(g, 1.0, e0(10), 5);
  for (long n = 1; n <= 5; ++n) CHECK(c.at(n) == Approx(1.0 / n));
  const auto d = dual_power_sequence(g, 1.0, {Probe::coordinate(0)}, 3);
  CHECK(d.front().series.at(1) == 0.0);
}

TEST_CASE("Cesaro means of the linear chain are harmonic") {
  const Series c = cesaro_sequence(birth("k+1", 1001), 1.0, e0(1001), 1000);
  CHECK(c.at(1000) == Approx(oracle::harmonic(1000) / 1000.0).margin(1e-6));
  CHECK(c.at(1000) == Approx(0.0074855).margin(1e-6));
  for (long n = 1; n <= 1000; ++n) CHECK(c.at(n) * n == Approx(oracle::harmonic(n)).margin(1e-10));
}

TEST_CASE("Cesaro means of the quadratic chain stay positive") {
  const Series c = cesaro_sequence(birth("(k+1)^2", 4000), 1.0, e0(4000), 3999);
  CHECK(estimate_cesaro_limit(c.values, c.first_n).value == Approx(oracle::pi_over_sinh_pi()).margin(1e-3));
}

TEST_CASE("dual powers of the quadratic chain") {
  const auto d = dual_power_sequence(birth("(k+1)^2", 2000), 1.0, default_probes(birth("(k+1)^2", 2000)), 1999);
  REQUIRE(d.size() == 3);
  const ProbeSeries& p0 = d.front();
  CHECK(p0.probe.label() == "coord_0");
  CHECK(p0.horizon == 1999);
  CHECK(p0.series.at(0) == 1.0);
  for (long n : {1L, 2L, 3L, 500L, 1999L}) CHECK(p0.series.at(n) == Approx(oracle::partial_product(square, 1.0, n)).epsilon(1e-12));
  for (const ProbeSeries& ps : d)
    for (std::size_t i = 1; i < ps.series.values.size(); ++i) CHECK(ps.series.values[i] <= ps.series.values[i - 1] + 1e-15);
  CHECK(d[2].horizon == 2000 - 1 - 1000);
}

TEST_CASE("dual powers of amplitude damping vanish after two steps") {
  const GeneratorPair ad = build_lindblad_pair(make_amplitude_damping());
  const auto d = dual_power_sequence(ad, 1.0, {Probe::trace(), Probe::entry(1, 1), Probe::entry(0, 0)}, 4);
  CHECK(d[0].series.at(1) == Approx(0.25));
  CHECK(d[1].series.at(1) == Approx(0.5));
  CHECK(d[2].series.at(1) == Approx(0.0).margin(1e-15));
  for (const ProbeSeries& ps : d) CHECK(ps.series.at(2) == Approx(0.0).margin(1e-15));
}

TEST_CASE("trusted horizon") {
  CHECK(trusted_horizon(birth("k+1", 100), 10000) == 99);
  CHECK(trusted_horizon(birth("k+1", 100), 50) == 50);
  CHECK(trusted_horizon(make_pure_birth(RateExpr::parse("k+1"), 100, Boundary::Reflect), 10000) == 10000);
  CHECK(trusted_horizon(build_lindblad_pair(make_amplitude_damping()), 300) == 300);
  CHECK(trusted_horizon(build_lindblad_pair(make_cascade(RateExpr::parse("k+1"), 20)), 300) == 19);
}

TEST_CASE("spectral margin") {
  CHECK(spectral_margin(birth("0", 30), 1.0) == Approx(1.0));

  double prev = 2.0;
  for (Index n : {50, 100, 200}) {
    const GeneratorPair g = birth("(k+1)^2", n);
    const double m = spectral_margin(g, 1.0);
    // Dense oracle: sigma_min(I - B diag(1/(1 + d))).
    Eigen::MatrixXd br = oracle::dense_generator(g);
    br.diagonal().setZero();
    br = br * (1.0 / (1.0 + g.diagonal().array())).matrix().asDiagonal();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd::Identity(n, n) - br);
    CHECK(m == Approx(svd.singularValues().minCoeff()).margin(1e-10));
    CHECK(m < prev);
    prev = m;
  }

  prev = 2.0;
  for (Index n : {50, 100, 200}) {
    const double m = spectral_margin(birth("k+1", n), 1.0);
    CHECK(m < prev);
    prev = m;
  }
  CHECK_THROWS_AS(spectral_margin(birth("1", kSpectralCapSequence + 1), 1.0), SizeError);
}

TEST_CASE("verdicts on the pure-birth ladder") {
  DiagnosticOptions opt;
  const HonestyReport q = run_ladder(builder("(k+1)^2"), first, {1000, 10000}, 1.0, opt);
  CHECK(q.verdict == Verdict::Dishonest);
  const LadderPoint& top = q.points.back();
  CHECK(top.norm_limit->value == Approx(oracle::pi_over_sinh_pi()).margin(1e-3));
  CHECK(std::abs(top.defect->value - top.norm_limit->value) < 1e-6);
  CHECK(std::abs(top.dual_limits.front().value - top.norm_limit->value) < 1e-6);

  const HonestyReport l = run_ladder(builder("k+1"), first, {2000, 10000}, 1.0, opt);
  CHECK(l.verdict == Verdict::Honest);

  const HonestyReport z = run_ladder(builder("0"), first, {100, 1000}, 1.0, opt);
  CHECK(z.verdict == Verdict::Honest);
}

TEST_CASE("a single truncation of an infinite chain is inconclusive") {
  DiagnosticOptions opt;
  const HonestyReport q = run_ladder(builder("(k+1)^2"), first, {1000}, 1.0, opt);
  CHECK(q.verdict == Verdict::Inconclusive);
  const HonestyReport ad = run_ladder([](Index) { return build_lindblad_pair(make_amplitude_damping()); },
                                      first, {2}, 1.0, opt);
  CHECK(ad.verdict == Verdict::Honest);
}

TEST_CASE("quantities between the thresholds give Inconclusive") {
  HonestyReport r;
  for (Index n : {100, 200}) {
    LadderPoint p;
    p.n = n;
    p.truncation_edge = true;
    p.norm_limit = LimitEstimate{1e-4, 0.0, "power"};
    p.defect = LimitEstimate{1e-4, 0.0, "power"};
    r.points.push_back(p);
  }
  CHECK(verdict(r) == Verdict::Inconclusive);
  CHECK_FALSE(r.evidence.empty());

  // Dishonest limits that disagree with the defect.
  for (LadderPoint& p : r.points) {
    p.norm_limit = LimitEstimate{0.3, 0.0, "power"};
    p.defect = LimitEstimate{0.1, 0.0, "power"};
  }
  r.evidence.clear();
  CHECK(verdict(r) == Verdict::Inconclusive);
}
