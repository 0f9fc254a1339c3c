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

#include "kato/kato_engine.hpp"

#include <cmath>
#include <sstream>

namespace kato {

long default_max_terms(Mode mode) { return mode == Mode::Sequence ? 1000000L : 10000L; }

namespace {

long max_terms_for(const GeneratorPair& gen, const SeriesOptions& options) {
  return options.max_terms > 0 ? options.max_terms : default_max_terms(gen.mode());
}

void require_options(const SeriesOptions& options) {
  if (!(options.tol > 0.0)) throw ValidationError("series tolerance must be positive");
}

// a(v) as a fixed linear functional: weights w with a(v) = <w, v>.
// Sequence: w_k = d_k - (births kept inside) - (deaths kept inside) - E_k.
// Matrix: W = -(Y + Y* + sum L*L + E).
class LossFunctional {
 public:
  explicit LossFunctional(const GeneratorPair& gen) : mode_(gen.mode()) {
    if (mode_ == Mode::Sequence) {
      const BirthDeathRates& r = gen.rates();
      const Index n = gen.dim();
      weights_ = gen.diagonal() - gen.edge_dual().values();
      for (Index k = 0; k + 1 < n; ++k) weights_(k) -= r.birth(k);
      for (Index k = 1; k < n; ++k) weights_(k) -= r.death(k);
    } else {
      const LindbladTerms& t = gen.terms();
      ComplexMatrix w = t.y + t.y.adjoint() + t.edge;
      for (const auto& l : t.jumps) w += l.adjoint() * l;
      loss_ = -w;
    }
  }

  double operator()(const StateVector& v) const {
    if (mode_ == Mode::Sequence) return weights_.dot(v.seq());
    return (v.mat().transpose().cwiseProduct(loss_)).sum().real();
  }

 private:
  Mode mode_;
  RealVector weights_;
  ComplexMatrix loss_;
};

struct PartStats {
  long terms = 0;
  double last_increment = 0.0;
  bool converged = false;
};

// Sums R (BR)^k part for k = 0, 1, ... and hands each increment to visit.
template <class Visit>
PartStats run_series(const GeneratorPair& gen, double lambda, const StateVector& part, const SeriesOptions& options,
                     Visit&& visit) {
  const long max_terms = max_terms_for(gen, options);
  PartStats stats;
  StateVector term = resolvent_A(gen, lambda, part);
  while (true) {
    visit(term);
    ++stats.terms;
    stats.last_increment = psi_norm(term);
    if (term.is_zero()) {
      stats.converged = true;
      break;
    }
    if (stats.last_increment < options.tol && stats.terms >= options.min_terms) {
      stats.converged = true;
      break;
    }
    if (stats.terms >= max_terms) break;
    term = resolvent_A(gen, lambda, apply_B(gen, term));
  }
  return stats;
}

template <class Visit>
KatoSeriesResult split_series(const GeneratorPair& gen, double lambda, const StateVector& u,
                              const SeriesOptions& options, Visit&& visit) {
  require_options(options);
  if (u.mode() != gen.mode() || u.dim() != gen.dim())
    throw ValidationError("input does not live in the generator space");
  KatoSeriesResult result;
  result.value = StateVector::zeros(gen.mode(), gen.dim());
  result.converged = true;
  auto [pos, neg] = split_positive_negative(u);
  for (int sign : {+1, -1}) {
    const StateVector& part = sign > 0 ? pos : neg;
    if (part.is_zero()) continue;
    const PartStats stats = run_series(gen, lambda, part, options, [&](const StateVector& term) {
      result.value += sign > 0 ? term : term * -1.0;
      visit(term, sign);
    });
    result.terms_used = std::max(result.terms_used, stats.terms);
    result.tail_norm_estimate += stats.last_increment;
    result.converged = result.converged && stats.converged;
  }
  return result;
}

}  // namespace

KatoSeriesResult minimal_resolvent(const GeneratorPair& gen, double lambda, const StateVector& u,
                                   const SeriesOptions& options) {
  return split_series(gen, lambda, u, options, [](const StateVector&, int) {});
}

double functional_a(const GeneratorPair& gen, const StateVector& v) {
  const StateVector flow = apply_A(gen, v) + apply_B(gen, v);
  return -psi_norm(flow) - pair(gen.edge_dual(), v);
}

FunctionalValues abar_on_resolvent(const GeneratorPair& gen, double lambda, const StateVector& u,
                                   const SeriesOptions& options) {
  const LossFunctional loss(gen);
  FunctionalValues out;
  double abar = 0.0;
  out.resolvent = split_series(gen, lambda, u, options, [&](const StateVector& term, int sign) {
    abar += sign * loss(term);
    out.partial_sums.push_back(abar);
  });
  out.abar = abar;
  out.a0 = psi_norm(u) - lambda * psi_norm(out.resolvent.value);
  out.defect = out.a0 - out.abar;
  return out;
}

StateVector semigroup_apply(const GeneratorPair& gen, double t, const StateVector& u, long n_steps,
                            const SeriesOptions& options) {
  if (!(t >= 0.0)) throw ValidationError("time must be non-negative");
  if (n_steps < 1) throw ValidationError("n_steps must be >= 1");
  if (t == 0.0) return u;
  const double lambda = static_cast<double>(n_steps) / t;
  StateVector v = u;
  for (long step = 0; step < n_steps; ++step) {
    KatoSeriesResult r = minimal_resolvent(gen, lambda, v, options);
    if (!r.converged) {
      std::ostringstream msg;
      msg << "resolvent series did not converge at Euler step " << step << " (tail " << r.tail_norm_estimate << ")";
      throw KatoError(msg.str());
    }
    v = r.value * lambda;
  }
  return v;
}

TimeDefectResult time_defect(const GeneratorPair& gen, double t, const StateVector& u, long n_steps, double lambda,
                             const SeriesOptions& options) {
  if (!(t >= 0.0)) throw ValidationError("time must be non-negative");
  if (n_steps < 1) throw ValidationError("n_steps must be >= 1");
  if (!is_positive(u)) throw ValidationError("time_defect requires a positive initial state");
  TimeDefectResult out;
  if (t == 0.0) return out;

  const double step_lambda = static_cast<double>(n_steps) / t;
  const double h = t / static_cast<double>(n_steps);
  StateVector v = u;
  StateVector integral = u * (0.5 * h);
  for (long step = 1; step <= n_steps; ++step) {
    KatoSeriesResult r = minimal_resolvent(gen, step_lambda, v, options);
    out.converged = out.converged && r.converged;
    v = r.value * step_lambda;
    integral += v * (step == n_steps ? 0.5 * h : h);
  }
  out.norm_change = v.norm() - u.norm();

  // w = R(lambda, G)(lambda w - G w) with G w = V(t)u - u.
  const StateVector z = integral * lambda - v + u;
  const FunctionalValues fv = abar_on_resolvent(gen, lambda, z, options);
  out.converged = out.converged && fv.resolvent.converged;
  out.abar_integral = fv.abar;
  out.a0_integral = fv.a0;
  out.a0_residual = std::abs(fv.a0 + out.norm_change);
  out.defect = out.norm_change + out.abar_integral;
  return out;
}

DefectDual defect_dual(const GeneratorPair& gen, double lambda, const SeriesOptions& options) {
  require_options(options);
  const long max_terms = max_terms_for(gen, options);
  DefectDual out;
  DualVector term = adjoint_resolvent_A(gen, lambda, gen.edge_dual());
  if (gen.mode() == Mode::Sequence) {
    RealVector acc = RealVector::Zero(gen.dim());
    while (true) {
      const RealVector values = term.values();
      acc += values;
      ++out.terms_used;
      const double inc = values.cwiseAbs().maxCoeff();
      if (inc == 0.0 || (inc < options.tol && out.terms_used >= options.min_terms)) {
        out.converged = true;
        break;
      }
      if (out.terms_used >= max_terms) break;
      term = adjoint_BR(gen, lambda, term);
    }
    out.dual = DualVector::sequence(std::move(acc));
    return out;
  }
  ComplexMatrix acc = ComplexMatrix::Zero(gen.dim(), gen.dim());
  while (true) {
    acc += term.mat();
    ++out.terms_used;
    const double inc = term.bound();
    if (inc == 0.0 || (inc < options.tol && out.terms_used >= options.min_terms)) {
      out.converged = true;
      break;
    }
    if (out.terms_used >= max_terms) break;
    term = adjoint_BR(gen, lambda, term);
  }
  out.dual = DualVector::matrix(std::move(acc));
  return out;
}

}  // namespace kato
