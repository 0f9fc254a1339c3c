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

#include "kato/state_space.hpp"

namespace kato {

/// Solves lambda X - Y X - X Y* = V for X.
///
/// The complex Schur form Y = U T U* is computed once; each solve is a
/// triangular back-substitution in the Schur basis (Bartels-Stewart). A
/// diagonal Y skips the basis change and divides entrywise.
class SylvesterSolver {
 public:
  SylvesterSolver() = default;
  explicit SylvesterSolver(const ComplexMatrix& y);

  Index dim() const { return schur_t_.rows(); }

  /// Throws KatoError when the smallest pivot |lambda - t_ii - conj(t_jj)|
  /// falls below the conditioning floor; the message carries the estimate.
  ComplexMatrix solve(double lambda, const ComplexMatrix& rhs) const;

  /// max|pivot| / min|pivot| for the given lambda.
  double condition_estimate(double lambda) const;

 private:
  bool diagonal_ = false;
  ComplexMatrix schur_u_;
  ComplexMatrix schur_t_;
};

/// Column-stacking superoperator of X -> lambda X - Y X - X Y*, i.e.
/// lambda I - (I kron Y) - (conj(Y) kron I). Dense N^2 x N^2; test oracle and
/// small-N assembly only.
ComplexMatrix vectorized_sylvester_operator(double lambda, const ComplexMatrix& y);

/// vec(X) with column stacking, and its inverse.
Eigen::VectorXcd vec(const ComplexMatrix& x);
ComplexMatrix unvec(const Eigen::VectorXcd& v, Index n);

}  // namespace kato
