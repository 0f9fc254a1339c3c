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

#include "kato/operators.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace kato {

const char* to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::BirthDeath:
      return "birth_death";
    case GeneratorKind::Lindblad:
      return "lindblad";
    case GeneratorKind::PotentialWrapped:
      return "potential_wrapped";
  }
  return "unknown";
}

const char* to_string(Boundary boundary) { return boundary == Boundary::Absorb ? "absorb" : "reflect"; }

namespace {

void require_rates(const RealVector& r, const char* name, Index n) {
  if (r.size() != n) {
    std::ostringstream msg;
    msg << name << " rates have length " << r.size() << ", expected " << n;
    throw ValidationError(msg.str());
  }
  for (Index k = 0; k < n; ++k)
    if (!std::isfinite(r(k)) || r(k) < 0.0) {
      std::ostringstream msg;
      msg << name << " rate at k=" << k << " is " << r(k) << " (must be finite and >= 0)";
      throw ValidationError(msg.str());
    }
}

void require_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    std::ostringstream msg;
    msg << "lambda must be positive, got " << lambda;
    throw ValidationError(msg.str());
  }
}

void require_state(const GeneratorPair& gen, const StateVector& v) {
  if (v.mode() != gen.mode() || v.dim() != gen.dim()) {
    std::ostringstream msg;
    msg << "state " << to_string(v.mode()) << "(" << v.dim() << ") does not live in the generator space "
        << to_string(gen.mode()) << "(" << gen.dim() << ")";
    throw ValidationError(msg.str());
  }
}

void require_dual(const GeneratorPair& gen, const DualVector& f) {
  if (f.mode() != gen.mode() || f.dim() != gen.dim()) {
    std::ostringstream msg;
    msg << "dual " << to_string(f.mode()) << "(" << f.dim() << ") does not live in the generator space "
        << to_string(gen.mode()) << "(" << gen.dim() << ")";
    throw ValidationError(msg.str());
  }
}

double dissipativity_expression(const LindbladTerms& t, const std::vector<SparseComplex>& jumps,
                                const Eigen::VectorXcd& u) {
  double value = 2.0 * u.dot(t.y * u).real();
  for (const auto& l : jumps) value += (l * u).squaredNorm();
  if (t.edge.size() > 0) value += u.dot(t.edge * u).real();
  return value;
}

std::vector<SparseComplex> to_sparse(const std::vector<ComplexMatrix>& jumps) {
  std::vector<SparseComplex> out;
  out.reserve(jumps.size());
  for (const auto& l : jumps) out.push_back(l.sparseView());
  return out;
}

}  // namespace

GeneratorPair GeneratorPair::birth_death(BirthDeathRates rates) {
  const Index n = rates.birth.size();
  if (n < 1) throw ValidationError("birth-death truncation needs N >= 1");
  if (rates.death.size() == 0) rates.death = RealVector::Zero(n);
  if (rates.loss.size() == 0) rates.loss = RealVector::Zero(n);
  require_rates(rates.birth, "birth", n);
  require_rates(rates.death, "death", n);
  require_rates(rates.loss, "loss", n);
  GeneratorPair gen;
  gen.kind_ = GeneratorKind::BirthDeath;
  gen.mode_ = Mode::Sequence;
  gen.dim_ = n;
  gen.rates_ = std::make_shared<const BirthDeathRates>(std::move(rates));
  gen.description_ = "birth_death";
  gen.prepare();
  return gen;
}

GeneratorPair GeneratorPair::lindblad(LindbladTerms terms) {
  const Index n = terms.y.rows();
  if (n < 1 || terms.y.cols() != n) throw ValidationError("Y must be a non-empty square matrix");
  for (const auto& l : terms.jumps)
    if (l.rows() != n || l.cols() != n) throw ValidationError("jump operators must match the shape of Y");
  if (terms.edge.size() == 0) terms.edge = ComplexMatrix::Zero(n, n);
  if (terms.edge.rows() != n || terms.edge.cols() != n) throw ValidationError("edge outflow must match the shape of Y");
  if (!terms.y.allFinite()) throw ValidationError("Y has non-finite entries");

  const DissipativityReport report = check_lindblad_dissipativity(terms);
  if (!report.dissipative) {
    std::ostringstream msg;
    msg << "Lindblad pair is not dissipative: 2Re<u,Yu> + sum|L u|^2 = " << report.worst_value
        << " > " << report.tolerance << " on the worst sampled unit vector";
    throw ValidationError(msg.str());
  }

  GeneratorPair gen;
  gen.kind_ = GeneratorKind::Lindblad;
  gen.mode_ = Mode::Matrix;
  gen.dim_ = n;
  gen.terms_ = std::make_shared<const LindbladTerms>(std::move(terms));
  gen.description_ = "lindblad";
  gen.prepare();
  return gen;
}

GeneratorPair GeneratorPair::with_potential(const GeneratorPair& inner, const StateVector& potential) {
  if (potential.mode() != inner.mode() || potential.dim() != inner.dim())
    throw ValidationError("potential does not live in the generator space");
  if (!is_positive(potential, 0.0)) throw ValidationError("potential K must be positive (no negative entries/eigenvalues)");

  GeneratorPair gen;
  gen.kind_ = GeneratorKind::PotentialWrapped;
  gen.mode_ = inner.mode();
  gen.dim_ = inner.dim();
  gen.inner_ = std::make_shared<const GeneratorPair>(inner);
  gen.potential_ = std::make_shared<const StateVector>(potential);
  gen.description_ = inner.description() + "+potential";
  if (inner.mode() == Mode::Sequence) {
    BirthDeathRates rates = inner.rates();
    rates.loss += potential.seq();
    gen.rates_ = std::make_shared<const BirthDeathRates>(std::move(rates));
  } else {
    LindbladTerms terms = inner.terms();
    terms.y -= potential.mat();
    gen.terms_ = std::make_shared<const LindbladTerms>(std::move(terms));
  }
  gen.prepare();
  return gen;
}

void GeneratorPair::prepare() {
  if (mode_ == Mode::Sequence) {
    const BirthDeathRates& r = *rates_;
    RealVector d = r.birth + r.loss;
    for (Index k = 1; k < dim_; ++k) d(k) += r.death(k);
    if (r.boundary == Boundary::Reflect) d(dim_ - 1) -= r.birth(dim_ - 1);
    diagonal_ = std::make_shared<const RealVector>(std::move(d));
    return;
  }
  const LindbladTerms& t = *terms_;
  sparse_jumps_ = std::make_shared<const std::vector<SparseComplex>>(to_sparse(t.jumps));
  forward_ = std::make_shared<const SylvesterSolver>(t.y);
  adjoint_ = std::make_shared<const SylvesterSolver>(ComplexMatrix(t.y.adjoint()));
}

const BirthDeathRates& GeneratorPair::rates() const {
  if (!rates_) throw ValidationError("generator pair has no birth-death rates");
  return *rates_;
}

const LindbladTerms& GeneratorPair::terms() const {
  if (!terms_) throw ValidationError("generator pair has no Lindblad terms");
  return *terms_;
}

DualVector GeneratorPair::edge_dual() const {
  if (mode_ == Mode::Sequence) {
    RealVector e = RealVector::Zero(dim_);
    if (rates_->boundary == Boundary::Absorb) e(dim_ - 1) = rates_->birth(dim_ - 1);
    return DualVector::sequence(std::move(e));
  }
  return DualVector::matrix(terms_->edge);
}

RealVector GeneratorPair::diagonal() const { return *diagonal_; }

RealVector GeneratorPair::b_apply(const RealVector& v) const {
  const RealVector& a = rates_->birth;
  const RealVector& b = rates_->death;
  RealVector out = RealVector::Zero(dim_);
  for (Index k = 1; k < dim_; ++k) out(k) += a(k - 1) * v(k - 1);
  for (Index k = 0; k + 1 < dim_; ++k) out(k) += b(k + 1) * v(k + 1);
  return out;
}

RealVector GeneratorPair::b_adjoint(const RealVector& f) const {
  const RealVector& a = rates_->birth;
  const RealVector& b = rates_->death;
  RealVector out = RealVector::Zero(dim_);
  for (Index k = 0; k + 1 < dim_; ++k) out(k) += a(k) * f(k + 1);
  for (Index k = 1; k < dim_; ++k) out(k) += b(k) * f(k - 1);
  return out;
}

ComplexMatrix GeneratorPair::b_apply(const ComplexMatrix& rho) const {
  ComplexMatrix out = ComplexMatrix::Zero(dim_, dim_);
  for (const auto& l : *sparse_jumps_) {
    ComplexMatrix left = l * rho;
    out += left * l.adjoint();
  }
  return out;
}

ComplexMatrix GeneratorPair::b_adjoint(const ComplexMatrix& x) const {
  ComplexMatrix out = ComplexMatrix::Zero(dim_, dim_);
  for (const auto& l : *sparse_jumps_) {
    ComplexMatrix left = l.adjoint() * x;
    out += left * l;
  }
  return out;
}

ComplexMatrix GeneratorPair::a_apply(const ComplexMatrix& rho) const {
  return terms_->y * rho + rho * terms_->y.adjoint();
}

ComplexMatrix GeneratorPair::resolvent_raw(double lambda, const ComplexMatrix& rho) const {
  require_lambda(lambda);
  return forward_->solve(lambda, rho);
}

ComplexMatrix GeneratorPair::resolvent_adjoint_raw(double lambda, const ComplexMatrix& x) const {
  require_lambda(lambda);
  return adjoint_->solve(lambda, x);
}

double GeneratorPair::sylvester_condition(double lambda) const {
  if (mode_ != Mode::Matrix) return 1.0;
  return forward_->condition_estimate(lambda);
}

StateVector resolvent_A(const GeneratorPair& gen, double lambda, const StateVector& v) {
  require_lambda(lambda);
  require_state(gen, v);
  if (gen.mode() == Mode::Sequence) {
    RealVector d = gen.diagonal().array() + lambda;
    return StateVector::sequence(v.seq().cwiseQuotient(d));
  }
  return StateVector::hermitian_part(gen.resolvent_raw(lambda, v.mat()));
}

StateVector apply_A(const GeneratorPair& gen, const StateVector& v) {
  require_state(gen, v);
  if (gen.mode() == Mode::Sequence) return StateVector::sequence(-gen.diagonal().cwiseProduct(v.seq()));
  return StateVector::hermitian_part(gen.a_apply(v.mat()));
}

StateVector apply_B(const GeneratorPair& gen, const StateVector& v) {
  require_state(gen, v);
  if (gen.mode() == Mode::Sequence) return StateVector::sequence(gen.b_apply(v.seq()));
  return StateVector::hermitian_part(gen.b_apply(v.mat()));
}

StateVector apply_BR(const GeneratorPair& gen, double lambda, const StateVector& v) {
  return apply_B(gen, resolvent_A(gen, lambda, v));
}

DualVector adjoint_resolvent_A(const GeneratorPair& gen, double lambda, const DualVector& f) {
  require_lambda(lambda);
  require_dual(gen, f);
  if (gen.mode() == Mode::Sequence) {
    RealVector d = gen.diagonal().array() + lambda;
    return DualVector::sequence(f.values().cwiseQuotient(d));
  }
  ComplexMatrix z = gen.resolvent_adjoint_raw(lambda, f.mat());
  return DualVector::matrix(0.5 * (z + z.adjoint()));
}

DualVector adjoint_BR(const GeneratorPair& gen, double lambda, const DualVector& f) {
  require_lambda(lambda);
  require_dual(gen, f);
  if (gen.mode() == Mode::Sequence) {
    RealVector d = gen.diagonal().array() + lambda;
    return DualVector::sequence(gen.b_adjoint(f.values()).cwiseQuotient(d));
  }
  ComplexMatrix z = gen.resolvent_adjoint_raw(lambda, gen.b_adjoint(f.mat()));
  return DualVector::matrix(0.5 * (z + z.adjoint()));
}

OperatorHandle resolvent_handle(const GeneratorPair& gen, double lambda) {
  require_lambda(lambda);
  OperatorHandle h;
  h.apply = [gen, lambda](const StateVector& v) { return resolvent_A(gen, lambda, v); };
  h.adjoint_apply = [gen, lambda](const DualVector& f) { return adjoint_resolvent_A(gen, lambda, f); };
  h.description = "R(lambda,A)";
  return h;
}

OperatorHandle br_handle(const GeneratorPair& gen, double lambda) {
  require_lambda(lambda);
  OperatorHandle h;
  h.apply = [gen, lambda](const StateVector& v) { return apply_BR(gen, lambda, v); };
  h.adjoint_apply = [gen, lambda](const DualVector& f) { return adjoint_BR(gen, lambda, f); };
  h.description = "B R(lambda,A)";
  return h;
}

DissipativityReport check_lindblad_dissipativity(const LindbladTerms& terms, int random_samples, unsigned seed) {
  const Index n = terms.y.rows();
  const std::vector<SparseComplex> jumps = to_sparse(terms.jumps);
  DissipativityReport report;
  report.tolerance = 1e-10 * std::max(1.0, terms.y.cwiseAbs().maxCoeff());
  report.worst_value = -std::numeric_limits<double>::infinity();
  report.best_value = std::numeric_limits<double>::infinity();

  auto visit = [&](const Eigen::VectorXcd& u) {
    const double value = dissipativity_expression(terms, jumps, u);
    if (value > report.worst_value) {
      report.worst_value = value;
      report.worst_sample = u;
    }
    report.best_value = std::min(report.best_value, value);
  };
  for (Index k = 0; k < n; ++k) visit(Eigen::VectorXcd::Unit(n, k));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  for (int s = 0; s < random_samples; ++s) {
    Eigen::VectorXcd u(n);
    for (Index k = 0; k < n; ++k) u(k) = Complex(gauss(rng), gauss(rng));
    visit(u / u.norm());
  }
  report.dissipative = report.worst_value <= report.tolerance;
  report.equality = report.worst_value <= report.tolerance && report.best_value >= -report.tolerance;
  return report;
}

double birth_death_balance_residual(const GeneratorPair& gen) {
  const BirthDeathRates& r = gen.rates();
  const RealVector edge = gen.edge_dual().values();
  const RealVector d = gen.diagonal();
  const Index n = gen.dim();
  double worst = 0.0;
  for (Index k = 0; k < n; ++k) {
    // <Psi, (A+B) e_k>: the diagonal outflow plus whatever B keeps inside.
    double flux = -d(k);
    if (k + 1 < n) flux += r.birth(k);
    if (k >= 1) flux += r.death(k);
    worst = std::max(worst, std::abs(flux + edge(k) + r.loss(k)));
  }
  return worst;
}

}  // namespace kato
