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
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "kato/kato_engine.hpp"
#include "kato/operators.hpp"

namespace kato {

/// The family of substochastic extensions of A + B that exists when the
/// minimal semigroup is dishonest. For u0 >= 0 with |u0| <= 1 the generator
/// G~ u = G u + <Delta, u> u0 has resolvent
///   R(lambda, G~) u = R(lambda, G) u + alpha_u R(lambda, G) u0,
///   alpha_u = <Delta_lambda, u> / (1 - <Delta_lambda, u0>).
/// Delta_lambda is represented by its dual vector, computed once per lambda.
class NonMinimalFamily {
 public:
  NonMinimalFamily(GeneratorPair gen, StateVector u0, SeriesOptions options = {});

  const GeneratorPair& generator() const { return gen_; }
  const StateVector& u0() const { return u0_; }

  /// <Delta_lambda, u>.
  double delta(double lambda, const StateVector& u) const;
  double alpha(double lambda, const StateVector& u) const;
  /// True when Delta_lambda vanishes: the family collapses to the minimal
  /// resolvent.
  bool degenerate(double lambda) const;

  StateVector resolvent(double lambda, const StateVector& u) const;

  /// Euler approximation ((n/t) R(n/t, G~))^n u.
  StateVector semigroup_apply(double t, const StateVector& u, long n_steps) const;

 private:
  const DualVector& dual(double lambda) const;

  GeneratorPair gen_;
  StateVector u0_;
  SeriesOptions options_;
  mutable std::mutex mutex_;
  mutable std::map<double, std::shared_ptr<const DualVector>> cache_;
};

StateVector nonminimal_resolvent(const NonMinimalFamily& family, double lambda, const StateVector& u);

struct ExtensionCheck {
  bool substochastic = true;
  bool resolvent_identity = true;
  bool extension = true;
  bool minimal_dominance = true;
  bool degenerate = false;
  double worst_mass_ratio = 0.0;          // max lambda |R~ u| / |u|
  double worst_identity_residual = 0.0;   // relative
  double worst_extension_residual = 0.0;  // relative
  double worst_dominance_violation = 0.0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Checks on positive samples: (a) lambda R(lambda, G~) is substochastic,
/// (b) the resolvent identity between lambda and 2 lambda, (c) for samples
/// with no mass on the truncation edge, R(lambda, G~)(lambda v - (A+B) v) = v,
/// (d) R(lambda, G) u <= R(lambda, G~) u.
ExtensionCheck verify_extension_family(const NonMinimalFamily& family, double lambda,
                                       const std::vector<StateVector>& samples, double tol = 1e-8);

/// (A - K, B) with K >= 0 bounded. Rejects negative K.
GeneratorPair perturb_with_potential(const GeneratorPair& gen, const StateVector& k);

/// max over samples of the largest entry/eigenvalue of
/// R(lambda, A_K) v - R(lambda, A) v (should be <= 0).
double resolvent_domination_violation(const GeneratorPair& base, const GeneratorPair& perturbed, double lambda,
                                      const std::vector<StateVector>& samples);

/// max over n <= n_max of the largest entry/eigenvalue of
/// (BR(lambda, A_K))^n u - (BR(lambda, A))^n u (should be <= 0).
double iterated_domination_violation(const GeneratorPair& base, const GeneratorPair& perturbed, double lambda,
                                     const StateVector& u, long n_max);

}  // namespace kato
