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

#include "kato/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "kato/kato_engine.hpp"

namespace kato {

namespace {

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

bool is_diagonal(const ComplexMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (i != j && m(i, j) != Complex(0.0, 0.0)) return false;
  return true;
}

double min_eigenvalue(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  if (is_diagonal(m)) return m.diagonal().real().minCoeff();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

ComplexMatrix unit_matrix(Index n, Index i, Index j) {
  ComplexMatrix e = ComplexMatrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

double smallest_singular_value(const Eigen::MatrixXcd& m) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues().minCoeff();
}

}  // namespace

LindbladModel make_lindblad_model(ComplexMatrix y, std::vector<ComplexMatrix> jumps, ComplexMatrix edge,
                                  std::string description) {
  const Index n = y.rows();
  if (y.cols() != n) throw ValidationError("Y must be square");
  if (edge.size() == 0) edge = ComplexMatrix::Zero(n, n);
  LindbladModel model;
  model.y = std::move(y);
  model.jumps = std::move(jumps);
  model.edge = std::move(edge);
  model.description = std::move(description);
  for (const auto& l : model.jumps)
    if (l.rows() != n || l.cols() != n) throw ValidationError("jump operator has wrong shape");
  if (model.edge.rows() != n || model.edge.cols() != n) throw ValidationError("edge outflow has wrong shape");
  model.dissipativity = check_lindblad_dissipativity(model.terms());
  if (!model.dissipativity.dissipative)
    throw ValidationError("Lindblad premise violated: 2Re<u,Yu> + sum |Lu|^2 reached " +
                          num(model.dissipativity.worst_value) + " (tolerance " +
                          num(model.dissipativity.tolerance) + ")");
  model.equality_case = model.dissipativity.equality;
  return model;
}

GeneratorPair build_lindblad_pair(const LindbladModel& model) {
  GeneratorPair gen = GeneratorPair::lindblad(model.terms());
  gen.set_description(model.description);
  return gen;
}

Complex upsilon_form(const LindbladModel& model, const ComplexMatrix& x, const Eigen::VectorXcd& v,
                     const Eigen::VectorXcd& u) {
  const Eigen::VectorXcd yu = model.y * u, yv = model.y * v;
  Complex out = v.dot(x * yu) + yv.dot(x * u);
  for (const auto& l : model.jumps) out += (l * v).dot(x * (l * u));
  return out;
}

ComplexMatrix upsilon_matrix(const LindbladModel& model, const ComplexMatrix& x) {
  ComplexMatrix out = x * model.y + model.y.adjoint() * x;
  for (const auto& l : model.jumps) out += l.adjoint() * x * l;
  return out;
}

ComplexMatrix q_lambda(const GeneratorPair& gen, double lambda, const ComplexMatrix& x) {
  return adjoint_BR(gen, lambda, DualVector::matrix(x)).mat();
}

ComplexMatrix p_lambda(const GeneratorPair& gen, double lambda, const ComplexMatrix& x) {
  return adjoint_resolvent_A(gen, lambda, DualVector::matrix(x)).mat();
}

ConservativityIterates conservativity_iterates(const GeneratorPair& gen, double lambda, long n_max,
                                               const std::vector<Eigen::VectorXcd>& probes) {
  if (gen.mode() != Mode::Matrix) throw ValidationError("conservativity iterates need a Lindblad generator");
  if (n_max < 0) throw ValidationError("n_max must be >= 0");
  ConservativityIterates out;
  out.min_eigenvalue.first_n = out.trace.first_n = 0;
  out.probes.resize(probes.size());
  for (auto& s : out.probes) s.first_n = 0;
  DualVector w = DualVector::unit(Mode::Matrix, gen.dim());
  for (long n = 0; n <= n_max; ++n) {
    const ComplexMatrix& x = w.mat();
    out.min_eigenvalue.values.push_back(min_eigenvalue(x));
    out.trace.values.push_back(x.trace().real());
    for (std::size_t p = 0; p < probes.size(); ++p) out.probes[p].values.push_back(probes[p].dot(x * probes[p]).real());
    if (n < n_max) w = adjoint_BR(gen, lambda, w);
  }
  return out;
}

FixedPointReport form_fixed_point_check(const LindbladModel& model, double lambda,
                                        const std::vector<ComplexMatrix>& samples, double tol) {
  const GeneratorPair gen = build_lindblad_pair(model);
  const Index n = model.dim();
  FixedPointReport report;
  for (const ComplexMatrix& x : samples) {
    FixedPointSample s;
    s.upsilon_residual = (upsilon_matrix(model, x) - lambda * x).norm();
    s.q_residual = (q_lambda(gen, lambda, x) - x).norm();
    s.consistent = (s.upsilon_residual < tol) == (s.q_residual < tol);
    report.consistent = report.consistent && s.consistent;
    report.samples.push_back(s);
  }
  if (n * n <= kSpectralCapMatrix) {
    Eigen::MatrixXcd ups(n * n, n * n), q(n * n, n * n);
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i) {
        const ComplexMatrix e = unit_matrix(n, i, j);
        ups.col(i + j * n) = vec(upsilon_matrix(model, e) - lambda * e);
        q.col(i + j * n) = vec(gen.resolvent_adjoint_raw(lambda, gen.b_adjoint(e)) - e);
      }
    report.sigma_min_upsilon = smallest_singular_value(ups);
    report.sigma_min_q = smallest_singular_value(q);
    const bool ups_kernel = report.sigma_min_upsilon < tol, q_kernel = report.sigma_min_q < tol;
    report.consistent = report.consistent && ups_kernel == q_kernel;
    report.witness = q_kernel;
  }
  return report;
}

RestrictionReport diagonal_restriction_check(const GeneratorPair& quantum, const GeneratorPair& classical,
                                             const RealVector& p, double t, long n_steps, double tol) {
  if (quantum.mode() != Mode::Matrix || classical.mode() != Mode::Sequence)
    throw ValidationError("diagonal restriction compares a Lindblad model with a sequence model");
  if (quantum.dim() != classical.dim() || p.size() != classical.dim())
    throw ValidationError("quantum and classical truncations differ");
  RestrictionReport report;
  const ComplexMatrix rho0 = p.cast<Complex>().asDiagonal();
  const StateVector q = semigroup_apply(quantum, t, StateVector::matrix(rho0), n_steps);
  const StateVector c = semigroup_apply(classical, t, StateVector::sequence(p), n_steps);
  report.quantum_populations = q.mat().diagonal().real();
  report.classical_populations = c.seq();
  report.max_deviation = (report.quantum_populations - report.classical_populations).cwiseAbs().maxCoeff();
  ComplexMatrix off = q.mat();
  off.diagonal().setZero();
  report.max_off_diagonal = off.size() ? off.cwiseAbs().maxCoeff() : 0.0;
  report.match = report.max_deviation <= tol && report.max_off_diagonal <= tol;
  return report;
}

ChoiReport choi_cp_check(const GeneratorPair& gen, double t, long n_steps, double tol) {
  if (gen.mode() != Mode::Matrix) throw ValidationError("Choi check needs a Lindblad generator");
  const Index n = gen.dim();
  if (n > kChoiMaxDim) throw SizeError("Choi check needs N <= " + std::to_string(kChoiMaxDim));
  ChoiReport report;
  report.choi = ComplexMatrix::Zero(n * n, n * n);
  const Complex i_unit(0.0, 1.0);
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) {
      const ComplexMatrix e = unit_matrix(n, i, j);
      // |i><j| = H1 + i H2 with Hermitian H1, H2; S(t) is linear.
      const ComplexMatrix h1 = 0.5 * (e + e.adjoint());
      const ComplexMatrix h2 = (e - e.adjoint()) / (2.0 * i_unit);
      const ComplexMatrix s1 = semigroup_apply(gen, t, StateVector::hermitian_part(h1), n_steps).mat();
      ComplexMatrix image = s1;
      if (i != j) image += i_unit * semigroup_apply(gen, t, StateVector::hermitian_part(h2), n_steps).mat();
      report.choi.block(i * n, j * n, n, n) = image;
      if (i != j) report.choi.block(j * n, i * n, n, n) = image.adjoint();
    }
  report.min_eigenvalue = min_eigenvalue(0.5 * (report.choi + report.choi.adjoint()));
  report.completely_positive = report.min_eigenvalue >= -tol;
  return report;
}

const char* to_string(SigmaChoice s) { return s == SigmaChoice::One ? "one" : "phase"; }

Eigen::VectorXcd fourier_mode(Index m, int k) {
  Eigen::VectorXcd phi(m);
  const double norm = 1.0 / std::sqrt(static_cast<double>(m));
  for (Index j = 0; j < m; ++j) {
    const double x = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m);
    phi(j) = norm * std::exp(Complex(0.0, static_cast<double>(k) * x));
  }
  return phi;
}

LindbladModel discretize_ssqds(Index m, SigmaChoice sigma, double h) {
  if (m < 8) throw ValidationError("SsQDS grid needs M >= 8");
  if (!(h > 0.0)) throw ValidationError("SsQDS spacing must be positive");
  ComplexMatrix shift = ComplexMatrix::Zero(m, m);  // (S u)_j = u_{j+1}
  for (Index j = 0; j < m; ++j) shift(j, (j + 1) % m) = 1.0;
  const ComplexMatrix id = ComplexMatrix::Identity(m, m);
  const ComplexMatrix d1 = (shift - shift.transpose()) / (2.0 * h);
  const ComplexMatrix d2 = (shift - 2.0 * id + shift.transpose()) / (h * h);

  Eigen::VectorXcd s(m);
  for (Index j = 0; j < m; ++j) {
    const double x = static_cast<double>(j) * h;
    s(j) = sigma == SigmaChoice::One ? Complex(1.0, 0.0) : Complex(0.0, -1.0) * std::exp(Complex(0.0, x));
  }
  const ComplexMatrix l = s.asDiagonal() * d1;
  ComplexMatrix y = 0.5 * (s.cwiseAbs2().cast<Complex>().asDiagonal() * d2);

  // Smallest shift c with Y + Y* + L*L - 2c <= 0; rounding-level
  // eigenvalues do not count.
  const ComplexMatrix h_form = y + y.adjoint() + l.adjoint() * l;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (h_form + h_form.adjoint()), Eigen::EigenvaluesOnly);
  const double top = es.eigenvalues().maxCoeff();
  const double floor = 1e-12 * std::max(1.0, h_form.cwiseAbs().maxCoeff());
  const double c = top > floor ? 0.5 * top : 0.0;
  y -= c * id;

  LindbladModel model = make_lindblad_model(std::move(y), {l}, ComplexMatrix(),
                                            std::string("ssqds(") + std::to_string(m) + "," + to_string(sigma) + ")");
  model.correction = c;
  return model;
}

LindbladModel discretize_ssqds(Index m, SigmaChoice sigma) {
  return discretize_ssqds(m, sigma, 2.0 * std::numbers::pi / static_cast<double>(m));
}

long ssqds_indicator_steps(Index m) {
  long steps = 0;
  for (Index v = m; v > 1; v >>= 1) ++steps;
  return steps + 2;
}

double ssqds_indicator(const LindbladModel& model) {
  const GeneratorPair gen = build_lindblad_pair(model);
  const long n = ssqds_indicator_steps(model.dim());
  const ConservativityIterates it = conservativity_iterates(gen, 1.0, n, {fourier_mode(model.dim(), 1)});
  return it.probes.front().values.back();
}

}  // namespace kato
