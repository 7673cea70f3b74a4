// Copyright 2026 The FANoS Bench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fanos/harness.hpp"

namespace fanos {

enum class OutputFormat { kCsv, kJson };

/// Scientific notation with 10 digits after the point; "--" when absent.
std::string format_real(double value);
std::string format_real(const std::optional<double>& value);

/// Files written by `write_sweep`:
///   csv:  trials.csv, summary.csv, best_lr.csv (Rosenbrock only),
///         sweep.dat (gnuplot blocks), timings.csv
///   json: results.json, sweep.dat, timings.csv
/// Everything except timings.csv is a pure function of the plan.
struct SweepFiles {
  std::vector<std::filesystem::path> written;
};

SweepFiles write_sweep(const SweepResult& result, Benchmark benchmark,
                       const std::filesystem::path& out_dir,
                       OutputFormat format, bool with_traces = false);

/// Ablation summary: variant, mean, std, ci_low, ci_high, div_rate.
SweepFiles write_ablations(const SweepResult& result,
                           const std::filesystem::path& out_dir,
                           OutputFormat format);

/// One CSV per regime with columns step, zeta, t_inst, t_ema, t_target.
SweepFiles write_thermostat_diagnostics(const DiagnosticsResult& result,
                                        const std::filesystem::path& out_dir);

/// Columns h_omega, integrator, det, trace, spectral_radius.
SweepFiles write_stability_report(const std::vector<StabilityRow>& rows,
                                  const std::filesystem::path& out_dir,
                                  OutputFormat format);

/// Fixed-width text table: method, lr, kappa, mean, std, 95% CI, div. rate.
std::string render_summary_table(const std::vector<SweepSummary>& rows,
                                 bool with_kappa, bool with_lr);

std::string integrator_name(Integrator integrator);

}  // namespace fanos
