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

#include <random>

#include <catch_amalgamated.hpp>

#include "kato/state_space.hpp"
#include "oracles.hpp"

using namespace kato;
using Catch::Approx;

namespace {

StateVector seq(std::initializer_list<double> xs) {
  RealVector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v(i++) = x;
  return StateVector::sequence(v);
}

StateVector diag(std::initializer_list<double> xs) {
  RealVector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v(i++) = x;
  return StateVector::matrix(v.cast<Complex>().asDiagonal());
}

}  // namespace

TEST_CASE("psi_norm on basis, density and signed vectors") {
  CHECK(psi_norm(StateVector::basis(Mode::Sequence, 4, 0)) == 1.0);
  CHECK(psi_norm(diag({0.3, 0.7})) == Approx(1.0).margin(1e-15));
  CHECK(psi_norm(seq({0.5, -0.2, 0.1})) == Approx(0.4).margin(1e-15));
}

TEST_CASE("non-Hermitian matrix input is rejected") {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.5, 0.0, 1.0;
  CHECK_THROWS_AS(StateVector::matrix(m), ValidationError);
  ComplexMatrix near(2, 2);
  near << 1.0, Complex(0.5, 1e-14), Complex(0.5, -1e-14), 1.0;
  CHECK_NOTHROW(StateVector::matrix(near));
}

TEST_CASE("non-finite sequence coordinates are rejected") {
  RealVector v(2);
  v << 1.0, std::nan("");
  CHECK_THROWS_AS(StateVector::sequence(v), ValidationError);
}

TEST_CASE("is_positive") {
  CHECK(is_positive(seq({0.1, 0.0, 0.9}), 0.0));
  CHECK_FALSE(is_positive(diag({1.0, -1e-3}), 1e-6));
  ComplexMatrix half = ComplexMatrix::Constant(2, 2, 0.5);
  CHECK(is_positive(StateVector::matrix(half), 1e-12));
  CHECK(min_spectrum(StateVector::matrix(half)) == Approx(0.0).margin(1e-14));
}

TEST_CASE("pair") {
  CHECK(pair(DualVector::unit(Mode::Sequence, 2), seq({0.2, 0.3})) == Approx(0.5));
  CHECK(pair(DualVector::unit(Mode::Matrix, 2), diag({0.4, 0.6})) == Approx(1.0));
  const DualVector f = DualVector::lazy_sequence(3, [](Index k) { return 1.0 / (k + 1.0); }, 1.0);
  CHECK(pair(f, StateVector::basis(Mode::Sequence, 3, 2)) == Approx(1.0 / 3.0));
  CHECK_THROWS_AS(pair(DualVector::unit(Mode::Sequence, 3), seq({1.0, 2.0})), ValidationError);
  CHECK_THROWS_AS(pair(DualVector::unit(Mode::Matrix, 2), seq({1.0, 2.0})), ValidationError);
}

TEST_CASE("additivity and monotonicity of psi on the cone") {
  std::mt19937_64 rng(11);
  for (int s = 0; s < 50; ++s) {
    const StateVector u = StateVector::sequence(oracle::random_positive(7, rng));
    const StateVector w = StateVector::sequence(oracle::random_positive(7, rng));
    CHECK(psi_norm(u + w) == Approx(psi_norm(u) + psi_norm(w)).margin(1e-12));
    CHECK(psi_norm(u) <= psi_norm(u + w));

    const StateVector r = StateVector::matrix(oracle::random_density(4, rng));
    const StateVector q = StateVector::matrix(oracle::random_density(4, rng));
    CHECK(psi_norm(r + q) == Approx(psi_norm(r) + psi_norm(q)).margin(1e-12));
    // r <= r + q in the Loewner order
    CHECK(psi_norm(r) <= psi_norm(r + q) + 1e-12);
  }
}

TEST_CASE("unit dual reproduces psi on signed vectors") {
  std::mt19937_64 rng(12);
  for (int s = 0; s < 50; ++s) {
    const StateVector h = StateVector::matrix(oracle::random_hermitian(5, rng));
    CHECK(pair(DualVector::unit(Mode::Matrix, 5), h) == Approx(psi_norm(h)).margin(1e-12));
    RealVector x = RealVector::Random(6);
    const StateVector v = StateVector::sequence(x);
    CHECK(pair(DualVector::unit(Mode::Sequence, 6), v) == Approx(psi_norm(v)).margin(1e-12));
  }
}

TEST_CASE("split into positive and negative parts") {
  std::mt19937_64 rng(13);
  for (int s = 0; s < 20; ++s) {
    const StateVector h = StateVector::matrix(oracle::random_hermitian(4, rng));
    auto [p, n] = split_positive_negative(h);
    CHECK(is_positive(p));
    CHECK(is_positive(n));
    CHECK((p - n - h).norm() < 1e-10);
    CHECK(h.norm() == Approx(p.norm() + n.norm()).epsilon(1e-10));
  }
  auto [p, n] = split_positive_negative(seq({0.5, -0.2, 0.1}));
  CHECK(p.seq()(1) == 0.0);
  CHECK(n.seq()(1) == Approx(0.2));
}

TEST_CASE("norm is l1 / trace norm") {
  CHECK(seq({0.5, -0.2, 0.1}).norm() == Approx(0.8));
  CHECK(diag({0.5, -0.25}).norm() == Approx(0.75));
}
