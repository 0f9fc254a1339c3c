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

#include <string>
#include <vector>

#include "kato/honesty.hpp"
#include "kato/operators.hpp"

namespace kato {

/// Y and jump operators L_l of a Lindblad generator on C^N, plus the
/// truncation-edge outflow (zero for exact finite models).
struct LindbladModel {
  ComplexMatrix y;
  std::vector<ComplexMatrix> jumps;
  ComplexMatrix edge;
  bool equality_case = false;
  DissipativityReport dissipativity;
  /// Zeroth-order shift c >= 0 subtracted from Y to restore dissipativity.
  double correction = 0.0;
  std::string description;

  Index dim() const { return y.rows(); }
  LindbladTerms terms() const { return {y, jumps, edge}; }
};

/// Validates shapes and the sampled dissipativity premise; throws
/// ValidationError carrying the worst sample value when it fails.
LindbladModel make_lindblad_model(ComplexMatrix y, std::vector<ComplexMatrix> jumps, ComplexMatrix edge = {},
                                  std::string description = "lindblad");

GeneratorPair build_lindblad_pair(const LindbladModel& model);

/// Upsilon(x)[v, u] = <v, x Y u> + <Y v, x u> + sum <L v, x L u>.
Complex upsilon_form(const LindbladModel& model, const ComplexMatrix& x, const Eigen::VectorXcd& v,
                     const Eigen::VectorXcd& u);

/// Matrix with entries Upsilon(x)[e_i, e_j] = (x Y + Y* x + sum L* x L)_ij.
ComplexMatrix upsilon_matrix(const LindbladModel& model, const ComplexMatrix& x);

/// Q_lambda(x) = (B R(lambda, A))^* x and P_lambda(x) = R(lambda, A)^* x.
ComplexMatrix q_lambda(const GeneratorPair& gen, double lambda, const ComplexMatrix& x);
ComplexMatrix p_lambda(const GeneratorPair& gen, double lambda, const ComplexMatrix& x);

struct ConservativityIterates {
  Series min_eigenvalue;  // n = 0..n_max, starting from the identity
  Series trace;
  std::vector<Series> probes;  // <phi, Q^n(1) phi> per probe vector
};

ConservativityIterates conservativity_iterates(const GeneratorPair& gen, double lambda, long n_max,
                                               const std::vector<Eigen::VectorXcd>& probes = {});

struct FixedPointSample {
  double upsilon_residual = 0.0;  // |Upsilon(x) - lambda x|_F
  double q_residual = 0.0;        // |Q_lambda(x) - x|_F
  bool consistent = true;         // both below tol or both above
};

struct FixedPointReport {
  std::vector<FixedPointSample> samples;
  /// Smallest singular values of x -> Upsilon(x) - lambda x and x -> Q(x) - x
  /// (column-stacked superoperators); both vanish exactly when the joint
  /// kernel is nontrivial. Negative when N^2 exceeds the assembly cap.
  double sigma_min_upsilon = -1.0;
  double sigma_min_q = -1.0;
  bool consistent = true;
  /// Eigen-direction of the smallest singular value of Q - I, reported as
  /// a dishonesty witness when sigma_min_q < tol.
  bool witness = false;
};

FixedPointReport form_fixed_point_check(const LindbladModel& model, double lambda,
                                        const std::vector<ComplexMatrix>& samples, double tol = 1e-8);

struct RestrictionReport {
  double max_deviation = 0.0;
  double max_off_diagonal = 0.0;
  bool match = true;
  RealVector quantum_populations;
  RealVector classical_populations;
};

/// Evolves diag(p) under the quantum semigroup and p under the classical
/// twin with the same Euler scheme, and compares populations.
RestrictionReport diagonal_restriction_check(const GeneratorPair& quantum, const GeneratorPair& classical,
                                             const RealVector& p, double t, long n_steps, double tol = 1e-10);

inline constexpr Index kChoiMaxDim = 12;

struct ChoiReport {
  double min_eigenvalue = 0.0;
  bool completely_positive = false;
  ComplexMatrix choi;
};

/// Choi matrix sum_ij |i><j| (x) S(t)|i><j| of the Euler-approximated map.
ChoiReport choi_cp_check(const GeneratorPair& gen, double t, long n_steps, double tol = 1e-8);

enum class SigmaChoice { One, Phase };
const char* to_string(SigmaChoice s);

/// Periodic central differences on M points x_j = j h:
/// L = diag(sigma) D1, Y = 1/2 |sigma|^2 D2 - c I, with c >= 0 the smallest
/// shift making Y + Y* + L*L <= 0 (reported in model.correction).
LindbladModel discretize_ssqds(Index m, SigmaChoice sigma, double h);
LindbladModel discretize_ssqds(Index m, SigmaChoice sigma);

/// Lowest non-constant Fourier mode e^{ix}/sqrt(M) on the grid.
Eigen::VectorXcd fourier_mode(Index m, int k);

/// Iteration count used by the SsQDS indicator on an M-point grid:
/// floor(log2 M) + 2.
long ssqds_indicator_steps(Index m);

/// <phi_1, Q_1^n(1) phi_1> with n = ssqds_indicator_steps(M).
double ssqds_indicator(const LindbladModel& model);

}  // namespace kato
