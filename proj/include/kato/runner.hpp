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

#include <optional>
#include <string>
#include <vector>

#include "kato/extensions.hpp"
#include "kato/honesty.hpp"
#include "kato/lindblad.hpp"
#include "kato/scenario.hpp"

namespace kato {

const char* tool_version();

struct RunOptions {
  /// 0: KATO_THREADS, then the hardware concurrency.
  int threads = 0;
  bool stable_output = false;
  std::optional<std::vector<double>> lambdas;
  std::optional<std::vector<Index>> ladder;
};

int resolve_threads(int requested);

struct TimeDefectEntry {
  double t = 0.0;
  double lambda = 1.0;
  Index n = 0;
  long n_steps = 0;
  TimeDefectResult result;
};

struct NonMinimalEntry {
  double lambda = 1.0;
  Index n = 0;
  Index u0 = 0;
  double delta_u = 0.0;   // <Delta, e_initial>
  double delta_u0 = 0.0;  // <Delta, u0>
  double alpha = 0.0;
  bool degenerate = false;
  /// max |R~_{u0} e - R~_{u0'} e| over coordinates for a second choice u0'.
  double distinct_u0_gap = 0.0;
  ExtensionCheck check;
};

struct PotentialEntry {
  double lambda = 1.0;
  double k = 0.0;
  HonestyReport report;
  double resolvent_violation = 0.0;
  double iterated_violation = 0.0;
  long iterations = 0;
};

struct ConservativityEntry {
  Index n = 0;
  double lambda = 1.0;
  bool equality_case = false;
  double correction = 0.0;
  ConservativityIterates iterates;
  /// Tail limit of <e_0, Q^n(1) e_0>.
  std::optional<LimitEstimate> probe_limit;
  std::optional<double> indicator;
  long indicator_steps = 0;
};

struct SpectralEntry {
  Index n = 0;
  double lambda = 1.0;
  std::optional<double> margin;
  std::string note;
};

struct CellTiming {
  std::string cell;
  double seconds = 0.0;
};

struct RunReport {
  ScenarioConfig config;
  std::vector<double> lambdas;
  std::vector<Index> ladder;
  std::vector<HonestyReport> honesty;
  /// Absent when no verdict-bearing diagnostic was selected.
  std::optional<Verdict> verdict;
  std::vector<std::string> evidence;
  std::vector<TimeDefectEntry> time_defect;
  std::vector<NonMinimalEntry> nonminimal;
  std::vector<PotentialEntry> potential;
  std::vector<ConservativityEntry> conservativity;
  std::vector<SpectralEntry> spectral;
  std::vector<std::string> errors;
  bool partial = false;
  bool stable_output = false;
  int threads = 1;
  double elapsed_seconds = 0.0;
  std::vector<CellTiming> timing;
};

/// Executes the selected diagnostics over the (lambda x ladder) grid. Cell
/// failures are recorded in report.errors and mark the report partial.
RunReport run(const ScenarioConfig& config, const RunOptions& options = {});

inline constexpr int kExitOk = 0;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitMismatch = 3;
inline constexpr int kExitConfig = 4;
inline constexpr int kExitIo = 5;
inline constexpr int kExitPartial = 6;

/// 0 on a match, when nothing definite was declared or when no verdict was
/// computed; 3 on mismatch; 2 on Inconclusive against a definite
/// expectation; 6 for a partial report.
int exit_code(const RunReport& report);

}  // namespace kato
