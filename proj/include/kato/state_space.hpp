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

#include <complex>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

#include <Eigen/Dense>

namespace kato {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Base class for every error thrown by the library.
class KatoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: non-Hermitian matrices, negative rates, mode mismatches.
class ValidationError : public KatoError {
 public:
  using KatoError::KatoError;
};

/// A dense assembly or truncation exceeds the configured size cap.
class SizeError : public KatoError {
 public:
  using KatoError::KatoError;
};

enum class Mode { Sequence, Matrix };

const char* to_string(Mode mode);

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kDefaultPositivityTol = 1e-10;

/// Element of a truncated abstract state space: a real l1 coordinate
/// vector or a complex Hermitian trace-class matrix.
///
/// Values are immutable; arithmetic returns new vectors.
class StateVector {
 public:
  StateVector() : StateVector(sequence(RealVector())) {}

  /// Validates that every coordinate is finite.
  static StateVector sequence(RealVector coords);
  /// Validates Hermiticity within kHermitianTol (relative to the largest
  /// entry) and stores the symmetrized matrix (v + v*)/2.
  static StateVector matrix(ComplexMatrix coords);
  /// Symmetrizes without validating; used on outputs of internal maps whose
  /// Hermiticity is guaranteed up to rounding.
  static StateVector hermitian_part(const ComplexMatrix& coords);

  static StateVector zeros(Mode mode, Index dim);
  /// e_k (Sequence) or |k><k| (Matrix).
  static StateVector basis(Mode mode, Index dim, Index k);

  Mode mode() const { return std::holds_alternative<RealVector>(data_) ? Mode::Sequence : Mode::Matrix; }
  Index dim() const;

  const RealVector& seq() const;
  const ComplexMatrix& mat() const;

  /// Cone norm: l1 norm or trace norm. Equals psi_norm on the cone.
  double norm() const;
  bool is_zero() const;

  StateVector operator+(const StateVector& other) const;
  StateVector operator-(const StateVector& other) const;
  StateVector operator*(double scale) const;
  friend StateVector operator*(double scale, const StateVector& v) { return v * scale; }
  StateVector& operator+=(const StateVector& other);

 private:
  explicit StateVector(std::variant<RealVector, ComplexMatrix> data) : data_(std::move(data)) {}

  std::variant<RealVector, ComplexMatrix> data_;
};

/// Positive functional on a truncated state space.
///
/// Sequence duals may be lazy: a coordinate evaluation function over
/// 0..N-1. Matrix duals are bounded Hermitian matrices paired through the
/// trace.
class DualVector {
 public:
  using Evaluator = std::function<double(Index)>;

  static DualVector sequence(RealVector values);
  static DualVector lazy_sequence(Index dim, Evaluator eval, double bound);
  static DualVector matrix(ComplexMatrix values);

  /// Psi (all ones) or the identity matrix.
  static DualVector unit(Mode mode, Index dim);
  static DualVector zeros(Mode mode, Index dim);

  Mode mode() const { return mode_; }
  Index dim() const { return dim_; }
  /// Known bound on |f(k)| or on the operator norm.
  double bound() const { return bound_; }

  double operator()(Index k) const;
  RealVector values() const;
  const ComplexMatrix& mat() const;

 private:
  DualVector() = default;

  Mode mode_ = Mode::Sequence;
  Index dim_ = 0;
  double bound_ = 0.0;
  Evaluator eval_;
  std::shared_ptr<const RealVector> values_;
  ComplexMatrix matrix_;
};

/// <Psi, v>: sum of coordinates or trace.
double psi_norm(const StateVector& v);

/// Cone membership: all coordinates >= -tol, or smallest eigenvalue >= -tol.
bool is_positive(const StateVector& v, double tol = kDefaultPositivityTol);

/// <f, v> = sum f(k) v(k) or Re Tr(v f).
double pair(const DualVector& f, const StateVector& v);

/// Splits v = pos - neg with pos, neg >= 0 (coordinatewise or through an
/// eigendecomposition).
std::pair<StateVector, StateVector> split_positive_negative(const StateVector& v);

/// Smallest eigenvalue of a Hermitian matrix; smallest coordinate otherwise.
double min_spectrum(const StateVector& v);

}  // namespace kato
