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

// Independent reference computations for the tests: closed forms and dense
// linear algebra on the assembled truncated generator.

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "kato/operators.hpp"

namespace oracle {

using kato::ComplexMatrix;
using kato::Index;
using kato::RealVector;

/// prod_{k<n} a_k / (lambda + a_k).
inline double partial_product(const std::function<double(double)>& a, double lambda, long n) {
  long double p = 1.0L;
  for (long k = 0; k < n; ++k) p *= static_cast<long double>(a(k)) / (lambda + a(k));
  return static_cast<double>(p);
}

/// Infinite product for a_k = (k+1)^2 at lambda = 1: pi / sinh(pi).
inline double pi_over_sinh_pi() { return std::numbers::pi / std::sinh(std::numbers::pi); }

inline double harmonic(long n) {
  long double h = 0.0L;
  for (long k = 1; k <= n; ++k) h += 1.0L / k;
  return static_cast<double>(h);
}

inline double poisson(long k, double t) { return std::exp(-t + k * std::log(t) - std::lgamma(k + 1.0)); }

/// Dense generator matrix of a truncated birth-death pair, including the
/// diagonal outflow through the edge.
inline Eigen::MatrixXd dense_generator(const kato::GeneratorPair& gen) {
  const Index n = gen.dim();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
  for (Index j = 0; j < n; ++j) g.col(j) = gen.b_apply(RealVector(RealVector::Unit(n, j)));
  g.diagonal() -= gen.diagonal();
  return g;
}

/// (lambda - G_N)^{-1} u by LU.
inline RealVector dense_resolvent(const kato::GeneratorPair& gen, double lambda, const RealVector& u) {
  const Eigen::MatrixXd g = dense_generator(gen);
  const Eigen::MatrixXd m = lambda * Eigen::MatrixXd::Identity(g.rows(), g.cols()) - g;
  return m.partialPivLu().solve(u);
}

/// exp(t G_N) u through the eigen-free scaling-and-squaring Taylor method.
inline RealVector dense_expm(const kato::GeneratorPair& gen, double t, const RealVector& u) {
  Eigen::MatrixXd g = dense_generator(gen) * t;
  int squarings = 0;
  while (g.cwiseAbs().rowwise().sum().maxCoeff() > 0.5) {
    g /= 2.0;
    ++squarings;
  }
  Eigen::MatrixXd e = Eigen::MatrixXd::Identity(g.rows(), g.cols());
  Eigen::MatrixXd term = e;
  for (int k = 1; k < 30; ++k) {
    term = term * g / k;
    e += term;
  }
  for (int s = 0; s < squarings; ++s) e = e * e;
  return e * u;
}

/// Column-stacked superoperator of rho -> sum L rho L*.
inline ComplexMatrix dense_b(const kato::LindbladTerms& t) {
  const Index n = t.y.rows();
  ComplexMatrix op = ComplexMatrix::Zero(n * n, n * n);
  // vec(L rho L*) = (conj(L) kron L) vec(rho).
  for (const auto& l : t.jumps)
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b) op.block(a * n, b * n, n, n) += std::conj(l(a, b)) * l;
  return op;
}

inline ComplexMatrix random_hermitian(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = {g(rng), g(rng)};
  return 0.5 * (m + m.adjoint());
}

inline ComplexMatrix random_density(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = {g(rng), g(rng)};
  ComplexMatrix rho = m * m.adjoint();
  return rho / rho.trace().real();
}

inline Eigen::VectorXcd random_unit(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(n);
  for (Index i = 0; i < n; ++i) v(i) = {g(rng), g(rng)};
  return v / v.norm();
}

inline RealVector random_positive(Index n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RealVector v(n);
  for (Index i = 0; i < n; ++i) v(i) = u(rng);
  return v / v.sum();
}

}  // namespace oracle
