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

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "kato/state_space.hpp"
#include "kato/sylvester.hpp"

namespace kato {

using SparseComplex = Eigen::SparseMatrix<Complex>;

enum class GeneratorKind { BirthDeath, Lindblad, PotentialWrapped };

const char* to_string(GeneratorKind kind);

/// How a birth-death chain is closed at state N-1.
///
/// Absorb drops the birth transition N-1 -> N from B but keeps it on the
/// diagonal of A, so mass leaves the truncated system. Reflect removes the
/// transition from both A and B, giving a conservative truncation.
enum class Boundary { Absorb, Reflect };

const char* to_string(Boundary boundary);

struct BirthDeathRates {
  RealVector birth;  // a_k
  RealVector death;  // b_k; b_0 is ignored (there is no state -1)
  RealVector loss;   // c_k
  Boundary boundary = Boundary::Absorb;
};

struct LindbladTerms {
  ComplexMatrix y;
  std::vector<ComplexMatrix> jumps;
  /// Outflow through the truncation edge as a positive dual (zero for exact
  /// finite models). Counted as flux by the loss functional.
  ComplexMatrix edge;
};

/// The generator pair (A, B) of Kato's theorem, exposed through a resolvent
/// oracle for A and an action oracle for B.
///
/// BirthDeath: A = diag(-(a_k + b_k + c_k)), B = birth subdiagonal plus
/// death superdiagonal. Lindblad: A rho = Y rho + rho Y*, B rho = sum L rho L*.
/// PotentialWrapped keeps the inner pair and acts as (A - K, B).
class GeneratorPair {
 public:
  static GeneratorPair birth_death(BirthDeathRates rates);
  static GeneratorPair lindblad(LindbladTerms terms);
  /// K >= 0: diagonal vector (Sequence) or Hermitian PSD matrix (Matrix).
  static GeneratorPair with_potential(const GeneratorPair& inner, const StateVector& potential);

  GeneratorKind kind() const { return kind_; }
  Mode mode() const { return mode_; }
  Index dim() const { return dim_; }
  const std::string& description() const { return description_; }
  void set_description(std::string text) { description_ = std::move(text); }

  /// Effective rates (potential already folded into the loss).
  const BirthDeathRates& rates() const;
  /// Effective Lindblad terms (Y already shifted by -K).
  const LindbladTerms& terms() const;
  const GeneratorPair* inner() const { return inner_.get(); }
  const StateVector* potential() const { return potential_.get(); }

  /// Boundary-outflow dual E >= 0; <E, v> is the flux leaving the truncation.
  DualVector edge_dual() const;

  // Raw actions on coordinate storage; the StateVector operations below
  // wrap these.
  RealVector diagonal() const;  // a_k + b_k + c_k with boundary handling
  RealVector b_apply(const RealVector& v) const;
  RealVector b_adjoint(const RealVector& f) const;
  ComplexMatrix b_apply(const ComplexMatrix& rho) const;
  ComplexMatrix b_adjoint(const ComplexMatrix& x) const;
  ComplexMatrix a_apply(const ComplexMatrix& rho) const;
  ComplexMatrix resolvent_raw(double lambda, const ComplexMatrix& rho) const;
  ComplexMatrix resolvent_adjoint_raw(double lambda, const ComplexMatrix& x) const;
  double sylvester_condition(double lambda) const;

 private:
  GeneratorPair() = default;
  void prepare();

  GeneratorKind kind_ = GeneratorKind::BirthDeath;
  Mode mode_ = Mode::Sequence;
  Index dim_ = 0;
  std::string description_;

  std::shared_ptr<const BirthDeathRates> rates_;
  std::shared_ptr<const LindbladTerms> terms_;
  std::shared_ptr<const RealVector> diagonal_;
  std::shared_ptr<const std::vector<SparseComplex>> sparse_jumps_;
  std::shared_ptr<const SylvesterSolver> forward_;  // lambda X - Y X - X Y*
  std::shared_ptr<const SylvesterSolver> adjoint_;  // lambda Z - Y* Z - Z Y

  std::shared_ptr<const GeneratorPair> inner_;
  std::shared_ptr<const StateVector> potential_;
};

/// w solving (lambda - A) w = v.
StateVector resolvent_A(const GeneratorPair& gen, double lambda, const StateVector& v);
/// A v (explicit action on a domain vector).
StateVector apply_A(const GeneratorPair& gen, const StateVector& v);
StateVector apply_B(const GeneratorPair& gen, const StateVector& v);
/// B R(lambda, A) v.
StateVector apply_BR(const GeneratorPair& gen, double lambda, const StateVector& v);
/// g = (B R(lambda, A))* f, i.e. R(lambda, A)* B* f.
DualVector adjoint_BR(const GeneratorPair& gen, double lambda, const DualVector& f);
/// R(lambda, A)* f (P_lambda in the Lindblad setting).
DualVector adjoint_resolvent_A(const GeneratorPair& gen, double lambda, const DualVector& f);

/// Lazy linear map with its adjoint.
struct OperatorHandle {
  std::function<StateVector(const StateVector&)> apply;
  std::function<DualVector(const DualVector&)> adjoint_apply;
  std::string description;
  bool positivity_preserving = true;
};

OperatorHandle resolvent_handle(const GeneratorPair& gen, double lambda);
OperatorHandle br_handle(const GeneratorPair& gen, double lambda);

/// Sampled check of 2Re<u,Yu> + sum |L u|^2 + <u,E u> <= 0 on the N basis
/// vectors plus `random_samples` random unit vectors (fixed seed).
struct DissipativityReport {
  double worst_value = 0.0;  // largest sampled expression
  double best_value = 0.0;   // smallest sampled expression
  Eigen::VectorXcd worst_sample;
  double tolerance = 0.0;
  bool dissipative = true;
  bool equality = true;  // every sample within +-tolerance of 0
};

DissipativityReport check_lindblad_dissipativity(const LindbladTerms& terms, int random_samples = 100,
                                                 unsigned seed = 20240611u);

/// Largest dissipativity residual: max_k (<Psi,(A+B)e_k> + E_k + c_k) for
/// birth-death chains; 0 means the balance <Psi,(A+B)e_k> = -c_k holds.
double birth_death_balance_residual(const GeneratorPair& gen);

}  // namespace kato
