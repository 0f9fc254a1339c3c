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

#include "kato/limit_estimate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace kato {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Sampler {
  const std::vector<double>& v;
  long first;
  long last() const { return first + static_cast<long>(v.size()) - 1; }
  double operator()(long n) const { return v[static_cast<std::size_t>(n - first)]; }
};

struct Fit {
  LimitEstimate estimate;
  std::function<double(double)> predict;
};

Fit unusable(const char* model) { return {{0.0, kInf, model}, nullptr}; }

Fit fit_geometric(const Sampler& s) {
  const long n3 = s.last();
  const long d = std::max<long>(1, static_cast<long>(0.1 * static_cast<double>(n3)));
  if (n3 - 2 * d < s.first || d < 2) return unusable("geometric");
  const long n1 = n3 - 2 * d, n2 = n3 - d;
  const double s1 = s(n1), s2 = s(n2), s3 = s(n3);
  const double d12 = s2 - s1, d23 = s3 - s2;
  if (d12 == 0.0) return unusable("geometric");
  const double rd = d23 / d12;  // r^d
  if (!(rd > 0.0 && rd < 1.0)) return unusable("geometric");
  const double limit = (s1 * s3 - s2 * s2) / (s1 + s3 - 2.0 * s2);
  const double dd = static_cast<double>(d), x1 = static_cast<double>(n1);
  return {{limit, 0.0, "geometric"},
          [=](double x) { return limit + (s1 - limit) * std::pow(rd, (x - x1) / dd); }};
}

Fit fit_power(const Sampler& s) {
  // Nodes must sit at exact ratios of 2.
  const long n = (s.last() / 8) * 8;
  const long q1 = n / 4, q2 = n / 2;
  if (q1 < s.first || q1 < 2) return unusable("power");
  LimitEstimate e = extrapolate_power(s(q1), s(q2), s(n));
  if (e.model != "power") return unusable("power");
  const double p = std::log((s(q1) - s(q2)) / (s(q2) - s(n))) / std::log(2.0);
  // One Richardson step against the n^-(p+1) correction, using n/8.
  const long q0 = n / 8;
  if (q0 >= s.first && q0 >= 2) {
    const LimitEstimate coarse = extrapolate_power(s(q0), s(q1), s(q2));
    if (coarse.model == "power") e.value += (e.value - coarse.value) / (std::pow(2.0, p + 1.0) - 1.0);
  }
  // Predictor L + C x^-p + D x^-(p+1), least squares on the three nodes.
  const double limit = e.value;
  double m11 = 0.0, m12 = 0.0, m22 = 0.0, r1 = 0.0, r2 = 0.0;
  for (long k : {q1, q2, n}) {
    const double x = static_cast<double>(k);
    const double f1 = std::pow(x, -p), f2 = f1 / x, y = s(k) - limit;
    m11 += f1 * f1;
    m12 += f1 * f2;
    m22 += f2 * f2;
    r1 += f1 * y;
    r2 += f2 * y;
  }
  const double det = m11 * m22 - m12 * m12;
  if (!(std::abs(det) > 0.0)) return unusable("power");
  const double c = (r1 * m22 - r2 * m12) / det;
  const double dcoef = (m11 * r2 - m12 * r1) / det;
  return {e, [=](double x) { return limit + c * std::pow(x, -p) + dcoef * std::pow(x, -p - 1.0); }};
}

// g(n) = n s(n) = L n + a + b ln n + c/n. With D(m) = g(4m) - 2g(2m) + g(m)
// the log and constant terms cancel: D(m) = L m + c/(4m).
Fit fit_cesaro(const Sampler& s) {
  const long m = s.last() / 8;
  if (m < s.first || m < 2) return unusable("cesaro");
  auto g = [&](long n) { return static_cast<double>(n) * s(n); };
  const double md = static_cast<double>(m);
  const double d1 = g(4 * m) - 2.0 * g(2 * m) + g(m);
  const double d2 = g(8 * m) - 2.0 * g(4 * m) + g(2 * m);
  const double limit = (2.0 * d2 - d1) / (3.0 * md);
  const double c = 4.0 * md * (d1 - limit * md);
  const double b = (g(2 * m) - g(m) - limit * md + c / (2.0 * md)) / std::log(2.0);
  const double a = g(m) - limit * md - b * std::log(md) - c / md;
  return {{limit, 0.0, "cesaro"}, [=](double x) { return limit + (a + b * std::log(x) + c / x) / x; }};
}

// Every model is scored on the same interior points, none of which is a
// fitting node of the power or cesaro models.
double misfit(const Sampler& s, const Fit& fit) {
  double worst = 0.0;
  const long n = s.last();
  for (double frac : {0.3, 0.4, 0.6, 0.7, 0.9}) {
    const long k = std::clamp(static_cast<long>(frac * static_cast<double>(n)), s.first, n);
    const double r = std::abs(fit.predict(static_cast<double>(k)) - s(k));
    worst = std::max(worst, std::isfinite(r) ? r : kInf);
  }
  return worst;
}

}  // namespace

LimitEstimate extrapolate_power(double f_quarter, double f_half, double f_full) {
  const double d1 = f_quarter - f_half, d2 = f_half - f_full;
  if (d2 == 0.0) return {f_full, 0.0, d1 == 0.0 ? "exact" : "last"};
  const double ratio = d1 / d2;
  if (!(ratio > 1.0) || !std::isfinite(ratio)) return {f_full, std::abs(d2), "last"};
  return {f_full - d2 / (ratio - 1.0), 0.0, "power"};
}

std::vector<LimitEstimate> candidate_limits(const std::vector<double>& values, long first_n) {
  if (values.empty()) return {};
  const Sampler s{values, first_n};
  std::vector<LimitEstimate> out;
  for (const Fit& fit : {fit_geometric(s), fit_power(s), fit_cesaro(s)}) {
    LimitEstimate e = fit.estimate;
    e.residual = fit.predict && std::isfinite(e.value) ? misfit(s, fit) : kInf;
    out.push_back(e);
  }
  return out;
}

LimitEstimate estimate_limit(const std::vector<double>& values, long first_n) {
  if (values.empty()) return {0.0, 0.0, "exact"};
  double bound = 0.0;
  for (double x : values) bound = std::max(bound, std::abs(x));
  const double tail = values.back();
  if (tail == 0.0) return {0.0, 0.0, "exact"};

  LimitEstimate best{tail, kInf, "last"};
  for (const LimitEstimate& e : candidate_limits(values, first_n))
    if (e.residual < best.residual) best = e;
  if (!std::isfinite(best.residual)) {
    best.value = tail;
    best.model = "last";
    best.residual = values.size() > 1 ? std::abs(values[values.size() - 2] - tail) : std::abs(tail);
  }
  best.value = std::clamp(best.value, 0.0, bound);
  return best;
}

LimitEstimate estimate_cesaro_limit(const std::vector<double>& means, long first_n) {
  if (means.size() < 2) return estimate_limit(means, first_n);
  std::vector<double> increments;
  increments.reserve(means.size() - 1);
  for (std::size_t i = 0; i + 1 < means.size(); ++i) {
    const double n = static_cast<double>(first_n) + static_cast<double>(i);
    increments.push_back((n + 1.0) * means[i + 1] - n * means[i]);
  }
  LimitEstimate e = estimate_limit(increments, first_n);
  double bound = 0.0;
  for (double x : means) bound = std::max(bound, std::abs(x));
  e.value = std::clamp(e.value, 0.0, bound);
  return e;
}

}  // namespace kato
