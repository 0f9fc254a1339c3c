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

#include <vector>

#include "kato/operators.hpp"
#include "kato/state_space.hpp"

namespace kato {

struct SeriesOptions {
  double tol = 1e-12;
  /// 0 selects the mode default: 10^6 (Sequence) or 10^4 (Matrix).
  long max_terms = 0;
  long min_terms = 8;
};

long default_max_terms(Mode mode);

/// Output of the minimal-resolvent Neumann series
/// R(lambda, G) u = sum_k R(lambda, A) (B R(lambda, A))^k u.
struct KatoSeriesResult {
  StateVector value;
  long terms_used = 0;
  /// Psi-norm of the last added increment (summed over the positive and
  /// negative parts).
  double tail_norm_estimate = 0.0;
  bool converged = false;
};

/// Values of the honesty functionals at R(lambda, G) u.
struct FunctionalValues {
  double a0 = 0.0;
  double abar = 0.0;
  /// a0 - abar = <Delta_lambda, u>.
  double defect = 0.0;
  /// Cumulative sums of a(R(lambda,A)(B R(lambda,A))^k u).
  std::vector<double> partial_sums;
  KatoSeriesResult resolvent;
};

/// Minimal resolvent R(lambda, G) u. The input is split into positive and
/// negative parts, each summed monotonically; a part stops once its
/// increment has Psi-norm below tol and at least min_terms terms were added.
KatoSeriesResult minimal_resolvent(const GeneratorPair& gen, double lambda, const StateVector& u,
                                   const SeriesOptions& options = {});

/// a(v) = -<Psi, A v + B v> with the truncation-edge outflow counted as
/// flux, so only model losses contribute.
double functional_a(const GeneratorPair& gen, const StateVector& v);

/// abar = sum_k a(R (BR)^k u), a0 = <Psi,u> - lambda <Psi, R(lambda,G) u>.
FunctionalValues abar_on_resolvent(const GeneratorPair& gen, double lambda, const StateVector& u,
                                   const SeriesOptions& options = {});

/// Backward-Euler (Post-Widder) approximation ((n/t) R(n/t, G))^n u.
StateVector semigroup_apply(const GeneratorPair& gen, double t, const StateVector& u, long n_steps,
                            const SeriesOptions& options = {});

struct TimeDefectResult {
  /// D(t,u) = |V(t)u| - |u| + abar(int_0^t V(s)u ds).
  double defect = 0.0;
  double norm_change = 0.0;  // |V(t)u| - |u|
  double abar_integral = 0.0;
  double a0_integral = 0.0;
  /// |a0(w) - (|u| - |V(t)u|)|, where w is the quadrature of the orbit.
  double a0_residual = 0.0;
  bool converged = true;
};

/// Honesty defect in the time domain. The orbit integral is a composite
/// trapezoid on the Euler grid; abar(w) is evaluated through
/// w = R(lambda, G)(lambda w - V(t)u + u).
TimeDefectResult time_defect(const GeneratorPair& gen, double t, const StateVector& u, long n_steps,
                             double lambda = 1.0, const SeriesOptions& options = {});

/// Dual representation d of Delta_lambda on a truncation:
/// <Delta_lambda, u> = <d, u>. Computed by the adjoint Neumann series
/// d = sum_k ((B R)^*)^k R^* E where E is the edge-outflow dual.
struct DefectDual {
  DualVector dual = DualVector::zeros(Mode::Sequence, 0);
  long terms_used = 0;
  bool converged = false;
};

DefectDual defect_dual(const GeneratorPair& gen, double lambda, const SeriesOptions& options = {});

}  // namespace kato
