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

namespace kato {

/// Estimated limit of a sampled sequence s(n), n = first_n .. first_n+len-1.
struct LimitEstimate {
  double value = 0.0;
  /// Test-point misfit of the selected tail model (0 for exact termination).
  double residual = 0.0;
  /// "exact", "geometric", "power", "cesaro" or "last".
  std::string model = "last";
};

/// Fits three tail models and keeps the one with the smallest misfit on a
/// common set of interior test points (0.3n, 0.4n, 0.6n, 0.7n, 0.9n):
///   geometric  s(n) = L + C r^n      on equally spaced points in the last 20%
///   power      s(n) = L + C n^-p     on n/4, n/2, n, refined with n/8
///   cesaro     n s(n) = L n + a + b ln n + c/n   on n/8, n/4, n/2, n
/// The result is clamped to [0, max |s|]. A series that reaches exactly 0
/// is reported as "exact".
LimitEstimate estimate_limit(const std::vector<double>& values, long first_n = 1);

/// The individual tail fits (geometric, power, cesaro); unusable fits carry
/// an infinite residual.
std::vector<LimitEstimate> candidate_limits(const std::vector<double>& values, long first_n = 1);

/// Limit of Cesaro means c(n) = g(n)/n, estimated from the increments
/// g(n+1) - g(n) (Stolz-Cesaro: if the increments converge, so does c).
LimitEstimate estimate_cesaro_limit(const std::vector<double>& means, long first_n = 1);

/// Three-point power-law extrapolation of f at x/4, x/2, x (x -> infinity).
/// Falls back to f(x) when the differences do not contract.
LimitEstimate extrapolate_power(double f_quarter, double f_half, double f_full);

}  // namespace kato
