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

#include "kato/sylvester.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace kato {

namespace {

constexpr double kPivotFloor = 1e-13;

}  // namespace

SylvesterSolver::SylvesterSolver(const ComplexMatrix& y) {
  if (y.rows() != y.cols()) throw ValidationError("Sylvester coefficient must be square");
  diagonal_ = true;
  for (Index j = 0; j < y.cols() && diagonal_; ++j)
    for (Index i = 0; i < y.rows(); ++i)
      if (i != j && y(i, j) != Complex(0.0, 0.0)) {
        diagonal_ = false;
        break;
      }
  if (diagonal_) {
    schur_t_ = y;
    return;
  }
  Eigen::ComplexSchur<ComplexMatrix> schur(y);
  if (schur.info() != Eigen::Success) throw KatoError("complex Schur decomposition failed");
  schur_u_ = schur.matrixU();
  schur_t_ = schur.matrixT();
}

double SylvesterSolver::condition_estimate(double lambda) const {
  const Index n = dim();
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const double p = std::abs(lambda - schur_t_(i, i) - std::conj(schur_t_(j, j)));
      lo = std::min(lo, p);
      hi = std::max(hi, p);
    }
  return n == 0 ? 1.0 : hi / lo;
}

ComplexMatrix SylvesterSolver::solve(double lambda, const ComplexMatrix& rhs) const {
  const Index n = dim();
  if (rhs.rows() != n || rhs.cols() != n) throw ValidationError("Sylvester right-hand side has wrong shape");
  const Eigen::VectorXcd diag = schur_t_.diagonal();
  const double scale = std::max(1.0, std::abs(lambda) + 2.0 * diag.cwiseAbs().maxCoeff());
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (std::abs(lambda - diag(i) - std::conj(diag(j))) < kPivotFloor * scale) {
        std::ostringstream msg;
        msg << "Sylvester system is singular at lambda=" << lambda
            << " (condition estimate " << condition_estimate(lambda) << ")";
        throw KatoError(msg.str());
      }

  if (diagonal_) {
    ComplexMatrix x(n, n);
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i) x(i, j) = rhs(i, j) / (lambda - diag(i) - std::conj(diag(j)));
    return x;
  }

  // In the Schur basis: (lambda - T) X~ - X~ T* = V~. Column j of X~ T*
  // involves columns k >= j only, so sweep j downwards.
  ComplexMatrix v = schur_u_.adjoint() * rhs * schur_u_;
  ComplexMatrix x = ComplexMatrix::Zero(n, n);
  ComplexMatrix shifted = -schur_t_;
  for (Index j = n - 1; j >= 0; --j) {
    Eigen::VectorXcd b = v.col(j);
    for (Index k = j + 1; k < n; ++k) b += std::conj(schur_t_(j, k)) * x.col(k);
    shifted.diagonal() = Eigen::VectorXcd::Constant(n, Complex(lambda, 0.0) - std::conj(diag(j))) - diag;
    x.col(j) = shifted.triangularView<Eigen::Upper>().solve(b);
  }
  return schur_u_ * x * schur_u_.adjoint();
}

ComplexMatrix vectorized_sylvester_operator(double lambda, const ComplexMatrix& y) {
  const Index n = y.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  ComplexMatrix op = lambda * ComplexMatrix::Identity(n * n, n * n);
  // vec(Y X) = (I kron Y) vec X, vec(X Y*) = (conj(Y) kron I) vec X.
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      op.block(a * n, b * n, n, n) -= id(a, b) * y;
      op.block(a * n, b * n, n, n) -= std::conj(y(a, b)) * id;
    }
  return op;
}

Eigen::VectorXcd vec(const ComplexMatrix& x) {
  return Eigen::Map<const Eigen::VectorXcd>(x.data(), x.size());
}

ComplexMatrix unvec(const Eigen::VectorXcd& v, Index n) {
  return Eigen::Map<const ComplexMatrix>(v.data(), n, n);
}

}  // namespace kato
