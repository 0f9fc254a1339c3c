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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kato/kato_engine.hpp"
#include "kato/limit_estimate.hpp"
#include "kato/operators.hpp"

namespace kato {

/// Sampled real series s(first_n), s(first_n + 1), ...
struct Series {
  long first_n = 1;
  std::vector<double> values;

  long last_n() const { return first_n + static_cast<long>(values.size()) - 1; }
  double at(long n) const { return values.at(static_cast<std::size_t>(n - first_n)); }
};

/// Largest n for which (BR)^n is unaffected by the truncation edge. With an
/// edge outflow the iterates reach state N-1 after N-1 steps at the earliest,
/// so the horizon is N-1; models without an edge are not clamped.
long trusted_horizon(const GeneratorPair& gen, long n_max);

bool has_truncation_edge(const GeneratorPair& gen);

/// s(n) = |(BR)^n u|, n = 1..n_max.
Series norm_decay_sequence(const GeneratorPair& gen, double lambda, const StateVector& u, long n_max);

/// c(n) = |(1/n) sum_{k<n} (BR)^k u|, n = 1..n_max.
Series cesaro_sequence(const GeneratorPair& gen, double lambda, const StateVector& u, long n_max);

/// Both of the above from one pass over the iterates.
struct PowerSeries {
  Series norm_decay;
  Series cesaro;
};
PowerSeries power_series(const GeneratorPair& gen, double lambda, const StateVector& u, long n_max);

struct Probe {
  enum class Kind { Coordinate, Trace, Entry };
  Kind kind = Kind::Coordinate;
  Index i = 0;
  Index j = 0;

  static Probe coordinate(Index k) { return {Kind::Coordinate, k, k}; }
  /// Tr(w)/N, i.e. w paired with the maximally mixed state.
  static Probe trace() { return {Kind::Trace, 0, 0}; }
  static Probe entry(Index i, Index j) { return {Kind::Entry, i, j}; }

  std::string label() const;
  double evaluate(const DualVector& w) const;
};

/// {0, 1, N/2} for sequences, {trace, (0,0)} for matrices.
std::vector<Probe> default_probes(const GeneratorPair& gen);

struct ProbeSeries {
  Probe probe;
  /// Iterations that never see the truncation edge from this probe.
  long horizon = 0;
  Series series;  // n = 0..horizon, w_0 = Psi
};

/// w_0 = Psi, w_n = (BR)^* w_{n-1}, evaluated at each probe.
std::vector<ProbeSeries> dual_power_sequence(const GeneratorPair& gen, double lambda, const std::vector<Probe>& probes,
                                             long n_max);

/// Largest N (Sequence) and N^2 (Matrix) for dense assembly of BR.
inline constexpr Index kSpectralCapSequence = 2000;
inline constexpr Index kSpectralCapMatrix = 4096;

/// Dense matrix of BR(lambda, A) on the truncation (superoperator in the
/// column-stacking convention for Matrix mode). Throws SizeError past the cap.
Eigen::MatrixXcd assemble_br(const GeneratorPair& gen, double lambda);

/// sigma_min(I - BR_N).
double spectral_margin(const GeneratorPair& gen, double lambda);

enum class Verdict { Honest, Dishonest, Inconclusive };
const char* to_string(Verdict v);

struct Thresholds {
  double honest = 1e-6;
  double dishonest = 1e-3;
  /// Required agreement between the norm-decay limit and the defect.
  double agreement = 1e-2;
};

struct DiagnosticOptions {
  long n_max = 10000;
  bool norm_decay = true;
  bool cesaro = true;
  bool dual_power = true;
  bool defect = true;
  bool spectral = false;
  SeriesOptions series;
};

/// Diagnostics of one (model, lambda, N) cell.
struct LadderPoint {
  Index n = 0;
  double lambda = 1.0;
  long horizon = 0;
  bool truncation_edge = false;

  std::optional<Series> norm_decay;
  std::optional<Series> cesaro;
  std::vector<ProbeSeries> dual_power;
  std::optional<LimitEstimate> norm_limit;
  std::optional<LimitEstimate> cesaro_limit;
  std::vector<LimitEstimate> dual_limits;
  /// Probes whose horizon covers the norm-decay horizon; only these enter
  /// the verdict.
  std::vector<bool> dual_in_verdict;

  /// <Delta_lambda, u> at N, and the extrapolation over N/4, N/2, N.
  std::optional<double> defect_raw;
  /// a0 and abar of R(lambda, G) u at N.
  std::optional<double> a0;
  std::optional<double> abar;
  std::optional<LimitEstimate> defect;
  std::vector<std::pair<Index, double>> defect_subtruncations;
  bool defect_converged = true;

  std::optional<double> spectral_margin;
  std::vector<std::string> evidence;
};

using GeneratorBuilder = std::function<GeneratorPair(Index n)>;
using StateBuilder = std::function<StateVector(const GeneratorPair& gen)>;

LadderPoint diagnose(const GeneratorBuilder& build, const StateBuilder& initial, Index n, double lambda,
                     const DiagnosticOptions& options);

struct HonestyReport {
  double lambda = 1.0;
  std::vector<LadderPoint> points;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<std::string> evidence;
};

/// Decision rule over the ladder. Dishonest: the norm-decay limit exceeds
/// the dishonest threshold at every point and agrees with the defect.
/// Honest: every limit and the defect sit below the honest threshold at
/// every point. Anything else is Inconclusive, with the reason recorded.
/// A single ladder point is accepted only for models without a truncation
/// edge (exact finite models). Sets report.verdict and appends evidence.
Verdict verdict(HonestyReport& report, const Thresholds& thresholds = {});

HonestyReport run_ladder(const GeneratorBuilder& build, const StateBuilder& initial, const std::vector<Index>& ladder,
                         double lambda, const DiagnosticOptions& options, const Thresholds& thresholds = {});

}  // namespace kato
