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

#include "kato/honesty.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <Eigen/SVD>

namespace kato {

namespace {

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

bool has_truncation_edge(const GeneratorPair& gen) { return gen.edge_dual().bound() > 0.0; }

long trusted_horizon(const GeneratorPair& gen, long n_max) {
  if (n_max < 1) throw ValidationError("n_max must be >= 1");
  if (!has_truncation_edge(gen)) return n_max;
  return std::max<long>(1, std::min<long>(n_max, static_cast<long>(gen.dim()) - 1));
}

PowerSeries power_series(const GeneratorPair& gen, double lambda, const StateVector& u, long n_max) {
  const long horizon = trusted_horizon(gen, n_max);
  const bool positive = is_positive(u);
  auto size = [&](const StateVector& v) { return positive ? psi_norm(v) : v.norm(); };

  PowerSeries out;
  out.norm_decay.values.reserve(static_cast<std::size_t>(horizon));
  out.cesaro.values.reserve(static_cast<std::size_t>(horizon));
  StateVector v = u;
  StateVector sum = StateVector::zeros(u.mode(), u.dim());
  bool vanished = false;
  double sum_norm = 0.0;
  for (long n = 1; n <= horizon; ++n) {
    if (!vanished) {
      sum += v;
      sum_norm = size(sum);
      v = apply_BR(gen, lambda, v);
      vanished = v.is_zero();
    }
    out.cesaro.values.push_back(sum_norm / static_cast<double>(n));
    out.norm_decay.values.push_back(vanished ? 0.0 : size(v));
  }
  return out;
}

Series norm_decay_sequence(const GeneratorPair& gen, double lambda, const StateVector& u, long n_max) {
  return power_series(gen, lambda, u, n_max).norm_decay;
}

Series cesaro_sequence(const GeneratorPair& gen, double lambda, const StateVector& u, long n_max) {
  return power_series(gen, lambda, u, n_max).cesaro;
}

std::string Probe::label() const {
  switch (kind) {
    case Kind::Coordinate: return "coord_" + std::to_string(i);
    case Kind::Trace: return "trace";
    case Kind::Entry: return "entry_" + std::to_string(i) + "_" + std::to_string(j);
  }
  return "probe";
}

double Probe::evaluate(const DualVector& w) const {
  switch (kind) {
    case Kind::Coordinate: return w(i);
    case Kind::Trace: return w.mat().trace().real() / static_cast<double>(w.dim());
    case Kind::Entry: return w.mat()(i, j).real();
  }
  return 0.0;
}

std::vector<Probe> default_probes(const GeneratorPair& gen) {
  const Index n = gen.dim();
  if (gen.mode() == Mode::Matrix) return {Probe::trace(), Probe::entry(0, 0)};
  std::vector<Probe> probes{Probe::coordinate(0)};
  if (n > 1) probes.push_back(Probe::coordinate(1));
  if (n / 2 > 1) probes.push_back(Probe::coordinate(n / 2));
  return probes;
}

std::vector<ProbeSeries> dual_power_sequence(const GeneratorPair& gen, double lambda, const std::vector<Probe>& probes,
                                             long n_max) {
  const long horizon = trusted_horizon(gen, n_max);
  const bool edge = has_truncation_edge(gen);
  std::vector<ProbeSeries> out;
  long longest = 0;
  for (const Probe& p : probes) {
    if (p.kind != Probe::Kind::Trace && (p.i >= gen.dim() || p.j >= gen.dim()))
      throw ValidationError("probe " + p.label() + " outside the truncation");
    ProbeSeries ps;
    ps.probe = p;
    ps.series.first_n = 0;
    // Information travels one state per step, so a probe at index j sees
    // the edge after N-1-j steps.
    const long reach = p.kind == Probe::Kind::Trace ? 0 : static_cast<long>(std::max(p.i, p.j));
    ps.horizon = edge ? std::max<long>(0, std::min(horizon, static_cast<long>(gen.dim()) - 1 - reach)) : horizon;
    longest = std::max(longest, ps.horizon);
    out.push_back(std::move(ps));
  }
  DualVector w = DualVector::unit(gen.mode(), gen.dim());
  bool vanished = false;
  for (long n = 0; n <= longest; ++n) {
    for (ProbeSeries& ps : out)
      if (n <= ps.horizon) ps.series.values.push_back(vanished ? 0.0 : ps.probe.evaluate(w));
    if (n == longest) break;
    if (!vanished) {
      w = adjoint_BR(gen, lambda, w);
      vanished = w.bound() == 0.0;
    }
  }
  return out;
}

Eigen::MatrixXcd assemble_br(const GeneratorPair& gen, double lambda) {
  const Index n = gen.dim();
  if (gen.mode() == Mode::Sequence) {
    if (n > kSpectralCapSequence)
      throw SizeError("spectral margin assembly needs N <= " + std::to_string(kSpectralCapSequence) + ", got " +
                      std::to_string(n));
    const RealVector d = gen.diagonal().array() + lambda;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (Index j = 0; j < n; ++j) {
      RealVector e = RealVector::Zero(n);
      e(j) = 1.0 / d(j);
      m.col(j) = gen.b_apply(e).cast<Complex>();
    }
    return m;
  }
  if (n * n > kSpectralCapMatrix)
    throw SizeError("spectral margin assembly needs N^2 <= " + std::to_string(kSpectralCapMatrix) + ", got " +
                    std::to_string(n * n));
  Eigen::MatrixXcd m(n * n, n * n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) {
      ComplexMatrix e = ComplexMatrix::Zero(n, n);
      e(i, j) = 1.0;
      m.col(i + j * n) = vec(gen.b_apply(gen.resolvent_raw(lambda, e)));
    }
  return m;
}

double spectral_margin(const GeneratorPair& gen, double lambda) {
  const Eigen::MatrixXcd br = assemble_br(gen, lambda);
  const Eigen::MatrixXcd op = Eigen::MatrixXcd::Identity(br.rows(), br.cols()) - br;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(op);
  return svd.singularValues().minCoeff();
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Honest: return "Honest";
    case Verdict::Dishonest: return "Dishonest";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

LadderPoint diagnose(const GeneratorBuilder& build, const StateBuilder& initial, Index n, double lambda,
                     const DiagnosticOptions& options) {
  const GeneratorPair gen = build(n);
  const StateVector u = initial(gen);
  if (!is_positive(u)) throw ValidationError("diagnostics need a positive initial state");

  LadderPoint pt;
  pt.n = n;
  pt.lambda = lambda;
  pt.truncation_edge = has_truncation_edge(gen);
  pt.horizon = trusted_horizon(gen, options.n_max);
  if (pt.horizon < options.n_max)
    pt.evidence.push_back("series clamped to n <= " + std::to_string(pt.horizon) + " (truncation edge at N-1)");

  if (options.norm_decay || options.cesaro) {
    PowerSeries ps = power_series(gen, lambda, u, options.n_max);
    if (options.norm_decay) {
      pt.norm_limit = estimate_limit(ps.norm_decay.values, ps.norm_decay.first_n);
      pt.norm_decay = std::move(ps.norm_decay);
    }
    if (options.cesaro) {
      pt.cesaro_limit = estimate_cesaro_limit(ps.cesaro.values, ps.cesaro.first_n);
      pt.cesaro = std::move(ps.cesaro);
    }
  }

  if (options.dual_power) {
    pt.dual_power = dual_power_sequence(gen, lambda, default_probes(gen), options.n_max);
    for (const ProbeSeries& ps : pt.dual_power) {
      pt.dual_limits.push_back(estimate_limit(ps.series.values, ps.series.first_n));
      const bool used = ps.horizon >= pt.horizon;
      pt.dual_in_verdict.push_back(used);
      if (!used)
        pt.evidence.push_back("dual probe " + ps.probe.label() + " reaches the edge after " +
                              std::to_string(ps.horizon) + " steps; informational only");
    }
  }

  if (options.defect) {
    auto defect_at = [&](const GeneratorPair& g) {
      const FunctionalValues fv = abar_on_resolvent(g, lambda, initial(g), options.series);
      pt.defect_converged = pt.defect_converged && fv.resolvent.converged;
      if (g.dim() == n) {
        pt.a0 = fv.a0;
        pt.abar = fv.abar;
      }
      return fv.defect;
    };
    const double raw = defect_at(gen);
    pt.defect_raw = raw;
    if (pt.truncation_edge && n / 4 >= 2) {
      const double dq = defect_at(build(n / 4));
      const double dh = defect_at(build(n / 2));
      pt.defect_subtruncations = {{n / 4, dq}, {n / 2, dh}, {n, raw}};
      LimitEstimate e = extrapolate_power(dq, dh, raw);
      e.value = std::clamp(e.value, 0.0, std::max({dq, dh, raw, 0.0}));
      pt.defect = e;
    } else {
      pt.defect = LimitEstimate{std::max(raw, 0.0), 0.0, pt.truncation_edge ? "last" : "exact"};
      pt.defect_subtruncations = {{n, raw}};
    }
    if (!pt.defect_converged) pt.evidence.push_back("resolvent series for the defect did not converge");
  }

  if (options.spectral) {
    try {
      pt.spectral_margin = spectral_margin(gen, lambda);
    } catch (const SizeError& e) {
      pt.evidence.push_back(std::string("spectral margin skipped: ") + e.what());
    }
  }
  return pt;
}

Verdict verdict(HonestyReport& report, const Thresholds& thresholds) {
  std::vector<std::string>& ev = report.evidence;
  if (report.points.empty()) {
    ev.push_back("no ladder points");
    return report.verdict = Verdict::Inconclusive;
  }
  const bool exact_finite =
      std::none_of(report.points.begin(), report.points.end(), [](const LadderPoint& p) { return p.truncation_edge; });
  if (report.points.size() < 2 && !exact_finite) {
    ev.push_back("a truncated model needs at least 2 ladder points");
    return report.verdict = Verdict::Inconclusive;
  }

  bool dishonest = true, honest = true, any_quantity = false;
  for (const LadderPoint& p : report.points) {
    const std::string at = "N=" + std::to_string(p.n) + ": ";
    if (!p.defect_converged) {
      ev.push_back(at + "defect series not converged");
      honest = dishonest = false;
    }
    if (p.norm_limit) {
      any_quantity = true;
      const double l = p.norm_limit->value;
      if (l <= thresholds.dishonest) dishonest = false;
      if (l >= thresholds.honest) honest = false;
      ev.push_back(at + "norm-decay limit " + num(l) + " (" + p.norm_limit->model + ")");
      if (p.defect) {
        const double gap = std::abs(l - p.defect->value);
        if (gap >= thresholds.agreement) {
          dishonest = false;
          ev.push_back(at + "norm-decay limit and defect disagree by " + num(gap));
        }
      }
    } else {
      dishonest = false;
    }
    if (p.defect) {
      any_quantity = true;
      if (p.defect->value >= thresholds.honest) honest = false;
      ev.push_back(at + "defect " + num(p.defect->value) + " (raw " + num(p.defect_raw.value_or(0.0)) + ")");
    } else {
      dishonest = false;
    }
    if (p.cesaro_limit) {
      any_quantity = true;
      if (p.cesaro_limit->value >= thresholds.honest) honest = false;
      ev.push_back(at + "cesaro limit " + num(p.cesaro_limit->value));
    }
    for (std::size_t k = 0; k < p.dual_limits.size(); ++k) {
      if (!p.dual_in_verdict[k]) continue;
      any_quantity = true;
      if (p.dual_limits[k].value >= thresholds.honest) honest = false;
      ev.push_back(at + "dual " + p.dual_power[k].probe.label() + " limit " + num(p.dual_limits[k].value));
    }
  }
  if (!any_quantity) {
    ev.push_back("no diagnostics selected");
    return report.verdict = Verdict::Inconclusive;
  }
  if (honest && dishonest) {
    ev.push_back("contradictory evidence");
    return report.verdict = Verdict::Inconclusive;
  }
  if (dishonest) return report.verdict = Verdict::Dishonest;
  if (honest) return report.verdict = Verdict::Honest;
  ev.push_back("quantities fall between the honest and dishonest thresholds or disagree");
  return report.verdict = Verdict::Inconclusive;
}

HonestyReport run_ladder(const GeneratorBuilder& build, const StateBuilder& initial, const std::vector<Index>& ladder,
                         double lambda, const DiagnosticOptions& options, const Thresholds& thresholds) {
  HonestyReport report;
  report.lambda = lambda;
  for (Index n : ladder) report.points.push_back(diagnose(build, initial, n, lambda, options));
  verdict(report, thresholds);
  return report;
}

}  // namespace kato
