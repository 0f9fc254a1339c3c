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

#include "kato/extensions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace kato {

namespace {

constexpr double kDegenerate = 1e-14;

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// Largest coordinate / eigenvalue, i.e. how far v is from being <= 0.
double max_positive_part(const StateVector& v) {
  if (v.mode() == Mode::Sequence) return v.dim() ? std::max(0.0, v.seq().maxCoeff()) : 0.0;
  return std::max(0.0, -min_spectrum(v * -1.0));
}

}  // namespace

NonMinimalFamily::NonMinimalFamily(GeneratorPair gen, StateVector u0, SeriesOptions options)
    : gen_(std::move(gen)), u0_(std::move(u0)), options_(options) {
  if (u0_.mode() != gen_.mode() || u0_.dim() != gen_.dim())
    throw ValidationError("u0 does not live in the generator space");
  if (!is_positive(u0_) || u0_.is_zero()) throw ValidationError("u0 must be positive and nonzero");
  if (psi_norm(u0_) > 1.0 + 1e-12) throw ValidationError("u0 must have norm <= 1");
}

const DualVector& NonMinimalFamily::dual(double lambda) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = cache_.find(lambda);
  if (it == cache_.end()) {
    DefectDual d = defect_dual(gen_, lambda, options_);
    if (!d.converged) throw KatoError("defect dual series did not converge at lambda=" + num(lambda));
    it = cache_.emplace(lambda, std::make_shared<const DualVector>(std::move(d.dual))).first;
  }
  return *it->second;
}

double NonMinimalFamily::delta(double lambda, const StateVector& u) const { return pair(dual(lambda), u); }

bool NonMinimalFamily::degenerate(double lambda) const { return dual(lambda).bound() < kDegenerate; }

double NonMinimalFamily::alpha(double lambda, const StateVector& u) const {
  const double denom = 1.0 - delta(lambda, u0_);
  if (!(denom > 0.0)) throw ValidationError("1 - <Delta, u0> must be positive, got " + num(denom));
  return delta(lambda, u) / denom;
}

StateVector NonMinimalFamily::resolvent(double lambda, const StateVector& u) const {
  const KatoSeriesResult base = minimal_resolvent(gen_, lambda, u, options_);
  if (degenerate(lambda)) return base.value;
  const double a = alpha(lambda, u);
  if (a == 0.0) return base.value;
  const KatoSeriesResult shift = minimal_resolvent(gen_, lambda, u0_, options_);
  return base.value + shift.value * a;
}

StateVector NonMinimalFamily::semigroup_apply(double t, const StateVector& u, long n_steps) const {
  if (!(t >= 0.0)) throw ValidationError("time must be non-negative");
  if (n_steps < 1) throw ValidationError("n_steps must be >= 1");
  if (t == 0.0) return u;
  const double lambda = static_cast<double>(n_steps) / t;
  StateVector v = u;
  for (long step = 0; step < n_steps; ++step) v = resolvent(lambda, v) * lambda;
  return v;
}

StateVector nonminimal_resolvent(const NonMinimalFamily& family, double lambda, const StateVector& u) {
  return family.resolvent(lambda, u);
}

ExtensionCheck verify_extension_family(const NonMinimalFamily& family, double lambda,
                                       const std::vector<StateVector>& samples, double tol) {
  const GeneratorPair& gen = family.generator();
  const double mu = 2.0 * lambda;
  const DualVector edge = gen.edge_dual();
  ExtensionCheck report;
  report.degenerate = family.degenerate(lambda);
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const StateVector& u = samples[s];
    const double size = std::max(psi_norm(u), 1e-300);
    const StateVector rl = family.resolvent(lambda, u);

    // (a)
    const double ratio = lambda * psi_norm(rl) / size;
    report.worst_mass_ratio = std::max(report.worst_mass_ratio, ratio);
    if (ratio > 1.0 + tol || !is_positive(rl)) report.substochastic = false;

    // (b) R(l) u - R(m) u = (m - l) R(l) R(m) u
    const StateVector rm = family.resolvent(mu, u);
    const StateVector lhs = rl - rm;
    const StateVector rhs = family.resolvent(lambda, rm) * (mu - lambda);
    const double id_res = (lhs - rhs).norm() / std::max(lhs.norm(), psi_norm(rl));
    report.worst_identity_residual = std::max(report.worst_identity_residual, id_res);
    if (id_res > tol) report.resolvent_identity = false;

    // (c) on the part of the sample away from the truncation edge
    StateVector v = u;
    if (v.mode() == Mode::Sequence) {
      RealVector c = v.seq();
      for (Index k = 0; k < c.size(); ++k)
        if (edge(k) != 0.0) c(k) = 0.0;
      v = StateVector::sequence(std::move(c));
    } else if (edge.bound() > 0.0) {
      // Remove the edge level's row and column.
      ComplexMatrix c = v.mat();
      const ComplexMatrix& e = edge.mat();
      for (Index k = 0; k < c.rows(); ++k)
        if (e(k, k) != Complex(0.0, 0.0)) {
          c.row(k).setZero();
          c.col(k).setZero();
        }
      v = StateVector::hermitian_part(c);
    }
    if (!v.is_zero()) {
      const StateVector z = v * lambda - apply_A(gen, v) - apply_B(gen, v);
      const StateVector back = family.resolvent(lambda, z);
      const double ext_res = (back - v).norm() / v.norm();
      report.worst_extension_residual = std::max(report.worst_extension_residual, ext_res);
      if (ext_res > tol) report.extension = false;
    }

    // (d)
    const StateVector minimal = minimal_resolvent(gen, lambda, u).value;
    const double viol = max_positive_part(minimal - rl);
    report.worst_dominance_violation = std::max(report.worst_dominance_violation, viol);
    if (viol > tol * psi_norm(rl)) report.minimal_dominance = false;
  }
  if (!report.substochastic)
    report.violations.push_back("substochastic: lambda |R~ u| / |u| reached " + num(report.worst_mass_ratio));
  if (!report.resolvent_identity)
    report.violations.push_back("resolvent_identity: residual " + num(report.worst_identity_residual));
  if (!report.extension) report.violations.push_back("extension: residual " + num(report.worst_extension_residual));
  if (!report.minimal_dominance)
    report.violations.push_back("minimal_dominance: violation " + num(report.worst_dominance_violation));
  return report;
}

GeneratorPair perturb_with_potential(const GeneratorPair& gen, const StateVector& k) {
  return GeneratorPair::with_potential(gen, k);
}

double resolvent_domination_violation(const GeneratorPair& base, const GeneratorPair& perturbed, double lambda,
                                      const std::vector<StateVector>& samples) {
  double worst = 0.0;
  for (const StateVector& v : samples)
    worst = std::max(worst, max_positive_part(resolvent_A(perturbed, lambda, v) - resolvent_A(base, lambda, v)));
  return worst;
}

double iterated_domination_violation(const GeneratorPair& base, const GeneratorPair& perturbed, double lambda,
                                     const StateVector& u, long n_max) {
  double worst = 0.0;
  StateVector a = u, b = u;
  for (long n = 1; n <= n_max; ++n) {
    a = apply_BR(base, lambda, a);
    b = apply_BR(perturbed, lambda, b);
    worst = std::max(worst, max_positive_part(b - a));
  }
  return worst;
}

}  // namespace kato
