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

#include "kato/state_space.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace kato {

const char* to_string(Mode mode) { return mode == Mode::Sequence ? "sequence" : "matrix"; }

namespace {

bool is_diagonal(const ComplexMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (i != j && m(i, j) != Complex(0.0, 0.0)) return false;
  return true;
}

void require_same_shape(const StateVector& a, const StateVector& b) {
  if (a.mode() != b.mode() || a.dim() != b.dim()) {
    std::ostringstream msg;
    msg << "state vector mismatch: " << to_string(a.mode()) << "(" << a.dim() << ") vs "
        << to_string(b.mode()) << "(" << b.dim() << ")";
    throw ValidationError(msg.str());
  }
}

}  // namespace

StateVector StateVector::sequence(RealVector coords) {
  if (!coords.allFinite()) throw ValidationError("sequence state has non-finite coordinates");
  return StateVector(std::move(coords));
}

StateVector StateVector::matrix(ComplexMatrix coords) {
  if (coords.rows() != coords.cols()) throw ValidationError("matrix state must be square");
  if (!coords.allFinite()) throw ValidationError("matrix state has non-finite entries");
  const double scale = std::max(1.0, coords.cwiseAbs().maxCoeff());
  const double asym = coords.size() == 0 ? 0.0 : (coords - coords.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTol * scale) {
    std::ostringstream msg;
    msg << "matrix state is not Hermitian (max |v - v*| = " << asym << ")";
    throw ValidationError(msg.str());
  }
  return hermitian_part(coords);
}

StateVector StateVector::hermitian_part(const ComplexMatrix& coords) {
  ComplexMatrix sym = 0.5 * (coords + coords.adjoint());
  return StateVector(std::move(sym));
}

StateVector StateVector::zeros(Mode mode, Index dim) {
  if (mode == Mode::Sequence) return StateVector(RealVector(RealVector::Zero(dim)));
  return StateVector(ComplexMatrix(ComplexMatrix::Zero(dim, dim)));
}

StateVector StateVector::basis(Mode mode, Index dim, Index k) {
  if (k < 0 || k >= dim) throw ValidationError("basis index out of range");
  if (mode == Mode::Sequence) {
    RealVector v = RealVector::Zero(dim);
    v(k) = 1.0;
    return StateVector(std::move(v));
  }
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m(k, k) = 1.0;
  return StateVector(std::move(m));
}

Index StateVector::dim() const {
  if (const auto* v = std::get_if<RealVector>(&data_)) return v->size();
  return std::get<ComplexMatrix>(data_).rows();
}

const RealVector& StateVector::seq() const {
  if (const auto* v = std::get_if<RealVector>(&data_)) return *v;
  throw ValidationError("expected a sequence state, got a matrix state");
}

const ComplexMatrix& StateVector::mat() const {
  if (const auto* m = std::get_if<ComplexMatrix>(&data_)) return *m;
  throw ValidationError("expected a matrix state, got a sequence state");
}

double StateVector::norm() const {
  if (mode() == Mode::Sequence) return seq().lpNorm<1>();
  const ComplexMatrix& m = mat();
  if (m.size() == 0) return 0.0;
  if (is_diagonal(m)) return m.diagonal().real().lpNorm<1>();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().lpNorm<1>();
}

bool StateVector::is_zero() const {
  if (mode() == Mode::Sequence) return seq().isZero(0.0);
  return mat().isZero(0.0);
}

StateVector StateVector::operator+(const StateVector& other) const {
  require_same_shape(*this, other);
  if (mode() == Mode::Sequence) return StateVector(RealVector(seq() + other.seq()));
  return StateVector(ComplexMatrix(mat() + other.mat()));
}

StateVector StateVector::operator-(const StateVector& other) const {
  require_same_shape(*this, other);
  if (mode() == Mode::Sequence) return StateVector(RealVector(seq() - other.seq()));
  return StateVector(ComplexMatrix(mat() - other.mat()));
}

StateVector StateVector::operator*(double scale) const {
  if (mode() == Mode::Sequence) return StateVector(RealVector(seq() * scale));
  return StateVector(ComplexMatrix(mat() * scale));
}

StateVector& StateVector::operator+=(const StateVector& other) {
  require_same_shape(*this, other);
  if (auto* v = std::get_if<RealVector>(&data_))
    *v += other.seq();
  else
    std::get<ComplexMatrix>(data_) += other.mat();
  return *this;
}

DualVector DualVector::sequence(RealVector values) {
  if (!values.allFinite()) throw ValidationError("dual vector has non-finite coordinates");
  DualVector f;
  f.mode_ = Mode::Sequence;
  f.dim_ = values.size();
  f.bound_ = values.size() == 0 ? 0.0 : values.cwiseAbs().maxCoeff();
  auto shared = std::make_shared<const RealVector>(std::move(values));
  f.values_ = shared;
  f.eval_ = [shared](Index k) { return (*shared)(k); };
  return f;
}

DualVector DualVector::lazy_sequence(Index dim, Evaluator eval, double bound) {
  if (bound < 0.0) throw ValidationError("dual bound must be non-negative");
  DualVector f;
  f.mode_ = Mode::Sequence;
  f.dim_ = dim;
  f.bound_ = bound;
  f.eval_ = std::move(eval);
  return f;
}

DualVector DualVector::matrix(ComplexMatrix values) {
  if (values.rows() != values.cols()) throw ValidationError("matrix dual must be square");
  const double scale = std::max(1.0, values.size() ? values.cwiseAbs().maxCoeff() : 0.0);
  if (values.size() && (values - values.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw ValidationError("matrix dual is not Hermitian");
  DualVector f;
  f.mode_ = Mode::Matrix;
  f.dim_ = values.rows();
  f.matrix_ = 0.5 * (values + values.adjoint());
  // Max absolute row sum: bounds the operator norm, exact for diagonal duals.
  if (f.dim_ > 0) f.bound_ = f.matrix_.cwiseAbs().rowwise().sum().maxCoeff();
  return f;
}

DualVector DualVector::unit(Mode mode, Index dim) {
  if (mode == Mode::Sequence) return sequence(RealVector::Ones(dim));
  return matrix(ComplexMatrix::Identity(dim, dim));
}

DualVector DualVector::zeros(Mode mode, Index dim) {
  if (mode == Mode::Sequence) return sequence(RealVector::Zero(dim));
  return matrix(ComplexMatrix::Zero(dim, dim));
}

double DualVector::operator()(Index k) const {
  if (mode_ != Mode::Sequence) throw ValidationError("coordinate evaluation on a matrix dual");
  if (k < 0 || k >= dim_) throw ValidationError("dual coordinate out of range");
  return eval_(k);
}

RealVector DualVector::values() const {
  if (mode_ != Mode::Sequence) throw ValidationError("coordinate values of a matrix dual");
  if (values_) return *values_;
  RealVector out(dim_);
  for (Index k = 0; k < dim_; ++k) out(k) = eval_(k);
  return out;
}

const ComplexMatrix& DualVector::mat() const {
  if (mode_ != Mode::Matrix) throw ValidationError("expected a matrix dual");
  return matrix_;
}

double psi_norm(const StateVector& v) {
  if (v.mode() == Mode::Sequence) return v.seq().sum();
  return v.mat().trace().real();
}

bool is_positive(const StateVector& v, double tol) {
  return min_spectrum(v) >= -tol;
}

double min_spectrum(const StateVector& v) {
  if (v.dim() == 0) return 0.0;
  if (v.mode() == Mode::Sequence) return v.seq().minCoeff();
  const ComplexMatrix& m = v.mat();
  if (is_diagonal(m)) return m.diagonal().real().minCoeff();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double pair(const DualVector& f, const StateVector& v) {
  if (f.mode() != v.mode() || f.dim() != v.dim()) {
    std::ostringstream msg;
    msg << "pairing mismatch: dual " << to_string(f.mode()) << "(" << f.dim() << ") with state "
        << to_string(v.mode()) << "(" << v.dim() << ")";
    throw ValidationError(msg.str());
  }
  if (v.mode() == Mode::Sequence) {
    const RealVector& x = v.seq();
    double acc = 0.0;
    for (Index k = 0; k < x.size(); ++k)
      if (x(k) != 0.0) acc += f(k) * x(k);
    return acc;
  }
  // Re Tr(v f) without forming the product.
  return (v.mat().transpose().cwiseProduct(f.mat())).sum().real();
}

std::pair<StateVector, StateVector> split_positive_negative(const StateVector& v) {
  if (v.mode() == Mode::Sequence) {
    const RealVector& x = v.seq();
    return {StateVector::sequence(x.cwiseMax(0.0)), StateVector::sequence((-x).cwiseMax(0.0))};
  }
  const ComplexMatrix& m = v.mat();
  if (is_diagonal(m)) {
    const RealVector d = m.diagonal().real();
    ComplexMatrix pos = ComplexMatrix::Zero(m.rows(), m.cols());
    ComplexMatrix neg = ComplexMatrix::Zero(m.rows(), m.cols());
    pos.diagonal() = d.cwiseMax(0.0).cast<Complex>();
    neg.diagonal() = (-d).cwiseMax(0.0).cast<Complex>();
    return {StateVector::hermitian_part(pos), StateVector::hermitian_part(neg)};
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  const RealVector& ev = es.eigenvalues();
  const ComplexMatrix& q = es.eigenvectors();
  ComplexMatrix pos = q * ev.cwiseMax(0.0).cast<Complex>().asDiagonal() * q.adjoint();
  ComplexMatrix neg = q * (-ev).cwiseMax(0.0).cast<Complex>().asDiagonal() * q.adjoint();
  return {StateVector::hermitian_part(pos), StateVector::hermitian_part(neg)};
}

}  // namespace kato
