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

#include "kato/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <thread>

namespace kato {

#ifndef KATOSG_VERSION
#define KATOSG_VERSION "0.0.0"
#endif

const char* tool_version() { return KATOSG_VERSION; }

namespace {

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

using Clock = std::chrono::steady_clock;

struct Task {
  std::string name;
  std::function<void()> body;
  std::string error;
  double seconds = 0.0;
};

// Workers pull tasks by index; every task owns its result slot.
void run_tasks(std::vector<Task>& tasks, int threads) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      Task& t = tasks[i];
      const auto start = Clock::now();
      try {
        t.body();
      } catch (const std::exception& e) {
        t.error = e.what();
      }
      t.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    }
  };
  const int n = std::max(1, std::min<int>(threads, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

StateVector random_positive(Mode mode, Index n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  if (mode == Mode::Sequence) {
    RealVector v(n);
    for (Index k = 0; k < n; ++k) v(k) = unif(rng);
    return StateVector::sequence(v / v.sum());
  }
  ComplexMatrix g(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) g(i, j) = Complex(unif(rng) - 0.5, unif(rng) - 0.5);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return StateVector::hermitian_part(rho);
}

StateVector constant_potential(const GeneratorPair& gen, double k) {
  if (gen.mode() == Mode::Sequence) return StateVector::sequence(RealVector::Constant(gen.dim(), k));
  return StateVector::matrix(ComplexMatrix::Identity(gen.dim(), gen.dim()) * k);
}

bool is_lindblad(ModelId id) { return model_mode(id) == Mode::Matrix; }

}  // namespace

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("KATO_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

RunReport run(const ScenarioConfig& input, const RunOptions& options) {
  const auto start = Clock::now();
  ScenarioConfig cfg = input;
  if (options.lambdas) cfg.lambdas = *options.lambdas;
  if (options.ladder) cfg.ladder = *options.ladder;
  validate_scenario(cfg);

  RunReport report;
  report.config = cfg;
  report.lambdas = cfg.lambdas;
  report.ladder = cfg.ladder;
  report.stable_output = options.stable_output;
  report.threads = resolve_threads(options.threads);

  const DiagnosticSelection& sel = cfg.diagnostics;
  const GeneratorBuilder build = [cfg](Index n) { return build_generator(cfg, n); };
  const StateBuilder initial = [cfg](const GeneratorPair& g) { return initial_state(cfg, g); };

  DiagnosticOptions dopt;
  dopt.n_max = cfg.n_max;
  dopt.norm_decay = sel.norm_decay;
  dopt.cesaro = sel.cesaro;
  dopt.dual_power = sel.dual_power;
  dopt.defect = sel.defect;
  dopt.spectral = false;
  dopt.series.tol = cfg.tol;
  const bool core = sel.norm_decay || sel.cesaro || sel.dual_power || sel.defect;

  const std::size_t nl = cfg.lambdas.size(), nn = cfg.ladder.size();
  std::vector<Task> tasks;
  auto add = [&tasks](std::string name, std::function<void()> body) {
    tasks.push_back(Task{std::move(name), std::move(body), {}, 0.0});
  };
  std::vector<std::optional<LadderPoint>> points(core ? nl * nn : 0);
  std::vector<std::optional<LadderPoint>> pot_points(sel.potential && core ? nl * nn : 0);

  for (std::size_t li = 0; li < nl; ++li)
    for (std::size_t ni = 0; ni < nn; ++ni) {
      const double lambda = cfg.lambdas[li];
      const Index n = cfg.ladder[ni];
      const std::string cell = "lambda=" + num(lambda) + " N=" + std::to_string(n);
      if (core)
        add("honesty " + cell, [&, li, ni, lambda, n] {
                           points[li * nn + ni] = diagnose(build, initial, n, lambda, dopt);
                         });
      if (sel.potential && core) {
        const double k = cfg.potential.k;
        GeneratorBuilder perturbed = [build, k](Index m) {
          const GeneratorPair g = build(m);
          return perturb_with_potential(g, constant_potential(g, k));
        };
        add("potential " + cell, [&, perturbed, li, ni, lambda, n] {
                           pot_points[li * nn + ni] = diagnose(perturbed, initial, n, lambda, dopt);
                         });
      }
    }

  if (sel.potential) {
    report.potential.resize(nl);
    for (std::size_t li = 0; li < nl; ++li) {
      report.potential[li].lambda = cfg.lambdas[li];
      report.potential[li].k = cfg.potential.k;
      report.potential[li].iterations = cfg.potential.iterations;
      add("domination lambda=" + num(cfg.lambdas[li]), [&, li] {
                         PotentialEntry& e = report.potential[li];
                         const GeneratorPair base = build(cfg.ladder.front());
                         const GeneratorPair pert = perturb_with_potential(base, constant_potential(base, e.k));
                         std::mt19937_64 rng(cfg.nonminimal.seed + li);
                         std::vector<StateVector> samples;
                         for (int s = 0; s < 5; ++s) samples.push_back(random_positive(base.mode(), base.dim(), rng));
                         e.resolvent_violation = resolvent_domination_violation(base, pert, e.lambda, samples);
                         for (const StateVector& u : samples)
                           e.iterated_violation = std::max(
                               e.iterated_violation, iterated_domination_violation(base, pert, e.lambda, u, e.iterations));
                       });
    }
  }

  if (sel.time_defect) {
    for (double t : cfg.time.t) report.time_defect.push_back({t, cfg.lambdas.front(), 0, cfg.time.n_steps, {}});
    for (std::size_t i = 0; i < report.time_defect.size(); ++i)
      add("time_defect t=" + num(report.time_defect[i].t), [&, i] {
                         TimeDefectEntry& e = report.time_defect[i];
                         const GeneratorPair g = build(cfg.time.truncation);
                         e.n = g.dim();
                         SeriesOptions so;
                         so.tol = cfg.tol;
                         e.result = time_defect(g, e.t, initial(g), e.n_steps, e.lambda, so);
                       });
  }

  if (sel.nonminimal) {
    report.nonminimal.resize(nl);
    for (std::size_t li = 0; li < nl; ++li)
      add("nonminimal lambda=" + num(cfg.lambdas[li]), [&, li] {
                         NonMinimalEntry& e = report.nonminimal[li];
                         e.lambda = cfg.lambdas[li];
                         e.n = cfg.nonminimal.truncation;
                         e.u0 = cfg.nonminimal.u0;
                         SeriesOptions so;
                         so.tol = cfg.tol;
                         const GeneratorPair g = build(e.n);
                         const StateVector u = initial(g);
                         const NonMinimalFamily family(g, StateVector::basis(g.mode(), e.n, e.u0), so);
                         e.delta_u = family.delta(e.lambda, u);
                         e.delta_u0 = family.delta(e.lambda, family.u0());
                         e.degenerate = family.degenerate(e.lambda);
                         e.alpha = family.alpha(e.lambda, u);
                         const Index other = e.u0 + 1 < e.n ? e.u0 + 1 : e.u0 - 1;
                         const NonMinimalFamily alt(g, StateVector::basis(g.mode(), e.n, other), so);
                         e.distinct_u0_gap =
                             (family.resolvent(e.lambda, u) - alt.resolvent(e.lambda, u)).seq().cwiseAbs().maxCoeff();
                         std::mt19937_64 rng(cfg.nonminimal.seed + li);
                         std::vector<StateVector> samples;
                         for (int s = 0; s < cfg.nonminimal.samples; ++s)
                           samples.push_back(random_positive(g.mode(), g.dim(), rng));
                         e.check = verify_extension_family(family, e.lambda, samples);
                       });
  }

  if (sel.conservativity && is_lindblad(cfg.model)) {
    for (Index n : cfg.ladder)
      for (double lambda : cfg.lambdas) {
        ConservativityEntry e;
        e.n = n;
        e.lambda = lambda;
        report.conservativity.push_back(std::move(e));
      }
    for (std::size_t i = 0; i < report.conservativity.size(); ++i)
      add("conservativity N=" + std::to_string(report.conservativity[i].n) + " lambda=" +
                           num(report.conservativity[i].lambda),
                       [&, i] {
                         ConservativityEntry& e = report.conservativity[i];
                         const LindbladModel model = build_lindblad_model(cfg, e.n);
                         const GeneratorPair g = build_lindblad_pair(model);
                         e.equality_case = model.equality_case;
                         e.correction = model.correction;
                         if (cfg.model == ModelId::Ssqds) {
                           e.indicator_steps = ssqds_indicator_steps(g.dim());
                           e.iterates = conservativity_iterates(g, e.lambda, e.indicator_steps,
                                                                {fourier_mode(g.dim(), 1)});
                           if (e.lambda == 1.0) e.indicator = ssqds_indicator(model);
                           return;
                         }
                         const long horizon = trusted_horizon(g, cfg.n_max);
                         e.iterates = conservativity_iterates(g, e.lambda, horizon,
                                                              {Eigen::VectorXcd::Unit(g.dim(), 0)});
                         const Series& s = e.iterates.probes.front();
                         e.probe_limit = estimate_limit(s.values, s.first_n);
                       });
  }

  if (sel.spectral) {
    const std::vector<Index>& sl = cfg.spectral_ladder.empty() ? cfg.ladder : cfg.spectral_ladder;
    for (Index n : sl)
      for (double lambda : cfg.lambdas) report.spectral.push_back({n, lambda, std::nullopt, ""});
    for (std::size_t i = 0; i < report.spectral.size(); ++i)
      add("spectral N=" + std::to_string(report.spectral[i].n) + " lambda=" +
                           num(report.spectral[i].lambda),
                       [&, i] {
                         SpectralEntry& e = report.spectral[i];
                         try {
                           e.margin = spectral_margin(build(e.n), e.lambda);
                         } catch (const SizeError& err) {
                           e.note = err.what();
                         }
                       });
  }

  run_tasks(tasks, report.threads);

  for (const Task& t : tasks) {
    if (!t.error.empty()) {
      report.errors.push_back(t.name + ": " + t.error);
      report.partial = true;
    }
    report.timing.push_back({t.name, t.seconds});
  }

  auto assemble = [&](std::vector<std::optional<LadderPoint>>& slots, std::size_t li) {
    HonestyReport hr;
    hr.lambda = cfg.lambdas[li];
    for (std::size_t ni = 0; ni < nn; ++ni)
      if (slots[li * nn + ni]) hr.points.push_back(std::move(*slots[li * nn + ni]));
    verdict(hr);
    return hr;
  };

  if (core) {
    for (std::size_t li = 0; li < nl; ++li) report.honesty.push_back(assemble(points, li));
    Verdict v = report.honesty.front().verdict;
    for (const HonestyReport& hr : report.honesty)
      if (hr.verdict != v) {
        report.evidence.push_back("verdicts differ across lambda");
        v = Verdict::Inconclusive;
        break;
      }
    report.verdict = v;
    if (sel.potential)
      for (std::size_t li = 0; li < nl; ++li) report.potential[li].report = assemble(pot_points, li);
  }
  if (!sel.any()) report.evidence.push_back("no diagnostics selected");

  report.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

int exit_code(const RunReport& report) {
  if (report.partial) return kExitPartial;
  const Expected want = report.config.expected;
  if (want == Expected::None || want == Expected::Qualitative || !report.verdict) return kExitOk;
  if (*report.verdict == Verdict::Inconclusive) return kExitInconclusive;
  const Verdict target = want == Expected::Honest ? Verdict::Honest : Verdict::Dishonest;
  return *report.verdict == target ? kExitOk : kExitMismatch;
}

}  // namespace kato
